#include "esim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace esim::csv {

std::string format(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    // snprintf honors the C locale here; normalize just in case the host
    // locale was switched.
    for (char& c : buf) {
        if (c == ',')
            c = '.';
        if (c == '\0')
            break;
    }
    return buf;
}

Writer::Writer(std::vector<std::string> header) : columns_(header.size())
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i)
            buffer_ += ',';
        buffer_ += header[i];
    }
    buffer_ += '\n';
}

void Writer::add_row(const std::vector<double>& values)
{
    if (values.size() != columns_)
        throw std::invalid_argument("csv::Writer: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            buffer_ += ',';
        buffer_ += format(values[i]);
    }
    buffer_ += '\n';
}

void Writer::add_row_raw(const std::vector<std::string>& cells)
{
    if (cells.size() != columns_)
        throw std::invalid_argument("csv::Writer: row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void Writer::write_file(const std::string& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("csv::Writer: cannot open " + path);
    out << buffer_;
}

} // namespace esim::csv
