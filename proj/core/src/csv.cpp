#include "ekcore/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "ekcore/config.hpp"

namespace ek {

struct CsvWriter::Impl {
    std::ofstream out;
    std::size_t n_columns;
};

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns)
    : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);
    if (!impl_->out) {
        delete impl_;
        throw std::runtime_error("cannot open output file: " + path);
    }
    impl_->n_columns = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) impl_->out << ",";
        impl_->out << columns[i];
    }
    impl_->out << "\n";
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != impl_->n_columns)
        throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) impl_->out << ",";
        impl_->out << format_double(values[i]);
    }
    impl_->out << "\n";
}

void CsvWriter::flush() { impl_->out.flush(); }

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
    CsvWriter w(path, columns);
    for (const auto& r : rows) w.row(r);
    w.flush();
}

}  // namespace ek
