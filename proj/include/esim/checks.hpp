#pragma once

#include <string>
#include <vector>

namespace esim::checks {

struct Check {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0; // half-width of the accepted band around expected
    bool pass = false;
};

struct CheckList {
    std::vector<Check> checks;

    void add_abs(const std::string& name, double actual, double expected, double tol);
    void add_rel(const std::string& name, double actual, double expected, double rel_tol);
    void add_range(const std::string& name, double actual, double lo, double hi);
    void add_bool(const std::string& name, bool ok);
    void merge(const CheckList& other);

    bool all_pass() const;
    // "CHECK <name>: expected=<e> actual=<a> tol=<t> -> PASS" lines
    std::string report() const;
};

// The acceptance criteria, one list per criterion (1-12).
CheckList criterion(int index);
int criterion_count();
std::string criterion_title(int index);

} // namespace esim::checks
