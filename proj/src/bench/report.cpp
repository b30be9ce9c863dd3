#include "roaring/bench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace roaring::bench {
namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Timing summarize(std::vector<double> samples_ns) {
    Timing t;
    t.runs = static_cast<int>(samples_ns.size());
    if (samples_ns.empty()) return t;
    std::sort(samples_ns.begin(), samples_ns.end());
    const std::size_t n = samples_ns.size();
    t.median_ns = n % 2 == 1 ? samples_ns[n / 2] : (samples_ns[n / 2 - 1] + samples_ns[n / 2]) / 2;
    t.dispersion = samples_ns.front() > 0 ? samples_ns.back() / samples_ns.front() : 1.0;
    return t;
}

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
    out << kCsvHeader << '\n';
    for (const Row& r : rows) {
        out << csv_field(r.dataset) << ',' << csv_field(r.structure) << ','
            << csv_field(r.benchmark) << ',' << csv_field(r.metric) << ','
            << format_number(r.value) << ',' << csv_field(r.units) << ',' << r.runs << ','
            << format_number(r.dispersion) << '\n';
    }
}

void write_json(std::ostream& out, const std::vector<Row>& rows) {
    nlohmann::json doc = nlohmann::json::array();
    for (const Row& r : rows) {
        doc.push_back({{"dataset", r.dataset},
                       {"structure", r.structure},
                       {"benchmark", r.benchmark},
                       {"metric", r.metric},
                       {"value", r.value},
                       {"units", r.units},
                       {"runs", r.runs},
                       {"dispersion", r.dispersion}});
    }
    out << doc.dump(2) << '\n';
}

void warn_dispersion(std::ostream& err, const std::vector<Row>& rows) {
    for (const Row& r : rows) {
        if (r.dispersion > kDispersionFlag) {
            err << "warning: " << r.structure << ' ' << r.benchmark << '/' << r.metric
                << " dispersion " << format_number(r.dispersion) << " exceeds "
                << format_number(kDispersionFlag) << '\n';
        }
    }
}

}  // namespace roaring::bench
