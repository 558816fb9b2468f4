#pragma once

#include <string>
#include <vector>

// CSV output: header row, %.17g decimal rendering, LF line endings.

namespace ek {

class CsvWriter {
public:
    CsvWriter(std::string path, std::vector<std::string> columns);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void flush();

private:
    struct Impl;
    Impl* impl_;
};

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace ek
