#include "potts/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace potts {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_finite(const std::string& s, const std::string& what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0'))
        throw SignalFormatError("cannot parse " + what + ": '" + s + "'");
    if (!std::isfinite(v))
        throw SignalFormatError(what + " is not finite: '" + s + "'");
    return v;
}

} // namespace

SignalColumns read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SignalFormatError("cannot open '" + path + "'");

    SignalColumns cols;
    bool header_seen = false;
    bool has_weights = false;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        if (!header_seen) {
            if (fields.size() == 3 && fields[0] == "x" && fields[2] == "w")
                has_weights = true;
            else if (!(fields.size() == 2 && fields[0] == "x"))
                throw SignalFormatError("expected header 'x,f' or 'x,f,w' in '" + path + "'");
            header_seen = true;
            continue;
        }
        if (fields.size() != (has_weights ? 3u : 2u))
            throw SignalFormatError("wrong column count in '" + path + "': " + line);
        const double x = parse_finite(fields[0], "x");
        if (!cols.x.empty() && x <= cols.x.back())
            throw SignalFormatError("x values must be strictly ascending in '" + path + "'");
        cols.x.push_back(x);
        cols.f.push_back(parse_finite(fields[1], "f"));
        if (has_weights) {
            const double w = parse_finite(fields[2], "w");
            if (!(w > 0.0)) throw SignalFormatError("weights must be positive in '" + path + "'");
            if (!cols.w) cols.w.emplace();
            cols.w->push_back(w);
        }
    }
    if (!header_seen || cols.x.empty())
        throw SignalFormatError("no data rows in '" + path + "'");
    return cols;
}

void write_signal_csv(const std::string& path, const SignalColumns& columns,
                      const std::string& value_header) {
    std::ofstream out(path);
    if (!out) throw SignalFormatError("cannot write '" + path + "'");
    out.precision(17);
    out << "x," << value_header;
    if (columns.w) out << ",w";
    out << '\n';
    for (std::size_t i = 0; i < columns.x.size(); ++i) {
        out << columns.x[i] << ',' << columns.f[i];
        if (columns.w) out << ',' << (*columns.w)[i];
        out << '\n';
    }
}

Kernel read_kernel_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SignalFormatError("cannot open kernel file '" + path + "'");
    std::vector<double> taps;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        taps.push_back(parse_finite(line, "kernel tap"));
    }
    if (taps.empty()) throw SignalFormatError("kernel file '" + path + "' is empty");

    double sum = 0.0;
    for (double t : taps) sum += t;
    if (std::abs(sum - 1.0) > 1e-12)
        std::cerr << "warning: kernel taps sum to " << sum << ", normalizing\n";
    try {
        return Kernel::from_taps(std::move(taps));
    } catch (const std::invalid_argument& e) {
        throw SignalFormatError(std::string("invalid kernel in '") + path + "': " + e.what());
    }
}

} // namespace potts
