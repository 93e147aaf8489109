// report.hpp — scenario reports: per-instance records, aggregate, JSON/CSV.

#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace entropic {

struct Record {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    double lhs = 0.0;
    double rhs = 0.0;
    double deficit = 0.0;
    bool pass = false;
};

struct Aggregate {
    double min_deficit = std::numeric_limits<double>::infinity();
    double max_violation = 0.0;
    std::size_t count = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

struct Report {
    std::string scenario;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<Record> records;
    Aggregate aggregate;
    double timing_ms = 0.0;

    /// Sets pass flags from the tolerance and recomputes the aggregate.
    void finalize(double tolerance) {
        aggregate = Aggregate{};
        for (auto& r : records) {
            r.pass = r.deficit >= -tolerance;  // false for NaN
            aggregate.min_deficit = std::min(aggregate.min_deficit, r.deficit);
            aggregate.max_violation = std::max(aggregate.max_violation, -r.deficit);
            ++aggregate.count;
            ++(r.pass ? aggregate.passed : aggregate.failed);
        }
    }

    bool all_passed() const { return aggregate.failed == 0; }

    nlohmann::ordered_json to_json(bool with_timing = true) const {
        nlohmann::ordered_json j;
        j["scenario"] = scenario;
        j["config"] = config;
        auto& recs = j["records"] = nlohmann::ordered_json::array();
        for (const auto& r : records) {
            nlohmann::ordered_json o;
            o["index"] = r.index;
            o["seed"] = r.seed;
            o["inputs"] = r.inputs;
            o["lhs"] = r.lhs;
            o["rhs"] = r.rhs;
            o["deficit"] = r.deficit;
            o["pass"] = r.pass;
            recs.push_back(std::move(o));
        }
        j["aggregate"] = {{"min_deficit", aggregate.min_deficit},
                          {"max_violation", aggregate.max_violation},
                          {"count", aggregate.count},
                          {"passed", aggregate.passed},
                          {"failed", aggregate.failed}};
        if (with_timing) j["timing_ms"] = timing_ms;
        return j;
    }

    /// One row per record; `inputs` is embedded as a quoted JSON string.
    std::string to_csv() const {
        std::ostringstream os;
        os.precision(17);
        os << "scenario,index,seed,lhs,rhs,deficit,pass,inputs\n";
        for (const auto& r : records) {
            std::string in = r.inputs.dump();
            std::string quoted;
            for (char c : in) {
                if (c == '"') quoted += '"';
                quoted += c;
            }
            os << scenario << ',' << r.index << ',' << r.seed << ',' << r.lhs << ',' << r.rhs << ',' << r.deficit << ','
               << (r.pass ? "true" : "false") << ",\"" << quoted << "\"\n";
        }
        return os.str();
    }
};

}  // namespace entropic
