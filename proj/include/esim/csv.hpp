#pragma once

#include <string>
#include <vector>

namespace esim::csv {

// Locale-independent value formatting: 12 significant digits, '.' decimal
// separator, no trailing-zero trimming surprises across platforms.
std::string format(double v);

// Minimal CSV assembler with stable headers and '\n' line endings.
class Writer {
public:
    explicit Writer(std::vector<std::string> header);

    void add_row(const std::vector<double>& values);
    void add_row_raw(const std::vector<std::string>& cells);

    const std::string& str() const { return buffer_; }
    void write_file(const std::string& path) const;

private:
    std::string buffer_;
    std::size_t columns_ = 0;
};

} // namespace esim::csv
