#include "pedyn/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pedyn/hexfloat.hpp"

namespace pedyn {

void write_run_csv(std::ostream& out, const RunLog& log) {
    out << kRunCsvHeader << '\n';
    for (const IterationRecord& r : log.records) {
        out << r.iter << ',' << r.goal_id << ',' << format_number(r.cmd_x) << ','
            << format_number(r.cmd_y) << ',' << format_number(r.exec_x) << ','
            << format_number(r.exec_y) << ',' << format_number(r.sigma) << ','
            << format_number(r.pe) << ',';
        if (r.goal_slope.defined) out << format_number(r.goal_slope.slope);
        out << ',' << r.buf_capacity << ',' << format_number(r.move_amplitude) << ',';
        if (r.has_mse) out << format_number(r.fwd_mse);
        out << ',';
        if (r.has_mse) out << format_number(r.inv_mse);
        out << ',';
        if (r.has_mse && r.mse_slope.defined) out << format_number(r.mse_slope.slope);
        out << '\n';
    }
}

void write_run_csv_file(const std::string& path, const RunLog& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    write_run_csv(out, log);
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no, const char* col) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number in " +
                                 col + ": \"" + s + "\"");
    }
    return v;
}

long long parse_int(const std::string& s, std::size_t line_no, const char* col) {
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad integer in " +
                                 std::string(col) + ": \"" + s + "\"");
    }
    return v;
}

} // namespace

RunLog read_run_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("csv: empty file");
    }
    if (line == std::string(kRunCsvHeader) + "\r") {
        line.pop_back();
    }
    if (line != kRunCsvHeader) {
        throw std::runtime_error("csv: unexpected header: \"" + line + "\"");
    }
    RunLog log;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != kRunCsvColumns) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(kRunCsvColumns) + " columns, got " +
                                     std::to_string(f.size()));
        }
        IterationRecord r;
        r.iter = static_cast<std::size_t>(parse_int(f[0], line_no, "iter"));
        r.goal_id = static_cast<int>(parse_int(f[1], line_no, "goal_id"));
        r.cmd_x = parse_double(f[2], line_no, "cmd_x");
        r.cmd_y = parse_double(f[3], line_no, "cmd_y");
        r.exec_x = parse_double(f[4], line_no, "exec_x");
        r.exec_y = parse_double(f[5], line_no, "exec_y");
        r.sigma = parse_double(f[6], line_no, "sigma");
        r.pe = parse_double(f[7], line_no, "pe");
        if (!f[8].empty()) {
            r.goal_slope = {parse_double(f[8], line_no, "goal_slope"), true};
        }
        r.buf_capacity = static_cast<std::size_t>(parse_int(f[9], line_no, "buf_capacity"));
        r.move_amplitude = parse_double(f[10], line_no, "move_amplitude");
        const bool fwd_blank = f[11].empty();
        const bool inv_blank = f[12].empty();
        if (fwd_blank != inv_blank) {
            throw std::runtime_error("csv line " + std::to_string(line_no) +
                                     ": fwd_mse and inv_mse must be blank together");
        }
        if (!fwd_blank) {
            r.has_mse = true;
            r.fwd_mse = parse_double(f[11], line_no, "fwd_mse");
            r.inv_mse = parse_double(f[12], line_no, "inv_mse");
        }
        if (!f[13].empty()) {
            if (!r.has_mse) {
                throw std::runtime_error("csv line " + std::to_string(line_no) +
                                         ": mse_slope present without fwd_mse");
            }
            r.mse_slope = {parse_double(f[13], line_no, "mse_slope"), true};
        }
        log.records.push_back(r);
    }
    return log;
}

RunLog read_run_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    return read_run_csv(in);
}

} // namespace pedyn
