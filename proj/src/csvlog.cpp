#include "polyguard/csvlog.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace polyguard {

std::string csv_header() {
    return "instance,mode,split,witness,ip,gran,seed,status,guards,iterations,"
           "final_granularity,reflex,faces_created,pair_queries,"
           "t_weakvis,t_shortest,t_pointvis,t_facevis,t_ip,t_other,t_total\n";
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << v;
    return os.str();
}

}  // namespace

std::string csv_row(const RunRecord& r) {
    std::ostringstream os;
    os << quote(r.instance) << "," << r.mode << "," << r.split_protocol << ","
       << r.witness_protocol << "," << r.ip_protocol << "," << r.gran_protocol << "," << r.seed
       << "," << r.status << "," << r.guards << "," << r.iterations << ",2^-"
       << r.final_granularity_k << "," << r.reflex << "," << r.faces_created << ","
       << r.pair_queries << "," << fmt(r.phases.weakvis) << "," << fmt(r.phases.shortest) << ","
       << fmt(r.phases.pointvis) << "," << fmt(r.phases.facevis) << "," << fmt(r.phases.ip) << ","
       << fmt(r.phases.other) << "," << fmt(r.phases.total) << "\n";
    return os.str();
}

RunRecord make_record(const std::string& instance, const std::string& mode,
                      const ProtocolConfig& cfg, const SolveReport& rep) {
    RunRecord r;
    r.instance = instance;
    r.mode = mode;
    r.split_protocol =
        cfg.split_protocol == ProtocolConfig::Split::Square ? "square" : "normal";
    switch (cfg.witness_protocol) {
        case ProtocolConfig::WitnessSel::All: r.witness_protocol = "all"; break;
        case ProtocolConfig::WitnessSel::Critical: r.witness_protocol = "critical"; break;
        case ProtocolConfig::WitnessSel::DelayedCritical: r.witness_protocol = "delayed"; break;
    }
    r.ip_protocol = cfg.ip_protocol == ProtocolConfig::IpProto::Simple ? "simple" : "normal";
    r.gran_protocol =
        cfg.granularity_update == ProtocolConfig::Gran::Accelerated ? "accelerated" : "normal";
    r.seed = cfg.rng_seed;
    switch (rep.status) {
        case SolveReport::Status::Optimal: r.status = "optimal"; break;
        case SolveReport::Status::Timeout: r.status = "timeout"; break;
        case SolveReport::Status::GranularityExhausted: r.status = "granularity_exhausted"; break;
    }
    r.guards = (int)rep.guard_refs.size();
    if (rep.status == SolveReport::Status::Optimal) r.guards = (int)rep.guards.size();
    r.iterations = rep.iterations;
    r.final_granularity_k = rep.final_granularity_k;
    r.reflex = rep.reflex_count;
    r.faces_created = rep.faces_created;
    r.pair_queries = rep.pair_queries;
    r.phases = rep.phases;
    return r;
}

void append_csv(const std::string& path, const RunRecord& rec) {
    bool need_header = true;
    if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) need_header = false;
    std::ofstream f(path, std::ios::app | std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    if (need_header) f << csv_header();
    f << csv_row(rec);
}

}  // namespace polyguard
