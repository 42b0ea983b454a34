#pragma once

#include <cstdint>
#include <string>

#include "patqsym/errors.hpp"

namespace patqsym {

enum class OutputFormat { text, csv, machine };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "csv") return OutputFormat::csv;
    if (s == "machine") return OutputFormat::machine;
    throw precondition_error("unknown output format '" + s + "' (text, csv, machine)");
}

inline const char* format_name(OutputFormat f) {
    switch (f) {
    case OutputFormat::text: return "text";
    case OutputFormat::csv: return "csv";
    default: return "machine";
    }
}

struct RunConfig {
    int enumeration_cap = 10;
    std::uint64_t node_budget = 100'000'000;
    std::uint64_t sample_count = 1'000'000;
    OutputFormat output_format = OutputFormat::text;
    std::string cache_path;
    bool partial_allowed = false;
    unsigned threads = 1;
    std::uint64_t seed = 1;

    void validate() const {
        if (enumeration_cap < 1) throw precondition_error("enumeration cap must be >= 1");
        if (node_budget < 1) throw precondition_error("node budget must be >= 1");
        if (sample_count < 1) throw precondition_error("sample count must be >= 1");
        if (threads < 1) throw precondition_error("threads must be >= 1");
    }
};

} // namespace patqsym
