#pragma once

#include "polyguard/solver.hpp"

#include <string>

namespace polyguard {

// One CSV row per run, RFC-4180 with a fixed documented header.
struct RunRecord {
    std::string instance;
    std::string mode;  // oneshot | iterative | verify | fpt
    std::string split_protocol;
    std::string witness_protocol;
    std::string ip_protocol;
    std::string gran_protocol;
    std::uint64_t seed = 0;
    std::string status;
    int guards = 0;
    int iterations = 0;
    int final_granularity_k = 0;
    int reflex = 0;
    int faces_created = 0;
    long pair_queries = 0;
    PhaseTimes phases;
};

std::string csv_header();
std::string csv_row(const RunRecord& rec);

RunRecord make_record(const std::string& instance, const std::string& mode,
                      const ProtocolConfig& cfg, const SolveReport& rep);

// Appends the row, writing the header first when the file is new or empty.
void append_csv(const std::string& path, const RunRecord& rec);

}  // namespace polyguard
