#pragma once
#include <cstdio>
#include <initializer_list>
#include <string>
#include <vector>

namespace qeswell {

// deterministic CSV assembly: doubles always as %.14e, C locale assumed
class CsvWriter {
public:
    void header(std::initializer_list<const char*> cols) {
        bool first = true;
        for (const char* c : cols) {
            if (!first) buf_ += ',';
            buf_ += c;
            first = false;
        }
        buf_ += '\n';
        at_row_start_ = true;
    }
    void header(const std::vector<std::string>& cols) {
        bool first = true;
        for (const std::string& c : cols) {
            if (!first) buf_ += ',';
            buf_ += c;
            first = false;
        }
        buf_ += '\n';
        at_row_start_ = true;
    }
    void field(double v) {
        sep();
        char tmp[40];
        std::snprintf(tmp, sizeof tmp, "%.14e", v);
        buf_ += tmp;
    }
    void field(long v) {
        sep();
        buf_ += std::to_string(v);
    }
    void field(const std::string& s) {
        sep();
        buf_ += s;
    }
    void end_row() {
        buf_ += '\n';
        at_row_start_ = true;
    }
    const std::string& str() const { return buf_; }

private:
    void sep() {
        if (!at_row_start_) buf_ += ',';
        at_row_start_ = false;
    }
    std::string buf_;
    bool at_row_start_ = true;
};

} // namespace qeswell
