#include "dbx/sweep.hpp"

#include <stdexcept>

namespace dbx {

SweepResult run_sweep(const SweepConfig& cfg, ExecPolicy policy) {
    if (cfg.count < 1)
        throw std::invalid_argument("run_sweep: count must be at least 1");
    if (cfg.b != 1 || cfg.m < 1 || cfg.n < 1)
        throw std::invalid_argument("run_sweep: family must be (m,1,n)");

    TwoLoopGraph g = build_family_graph(cfg.m, cfg.b, cfg.n);
    std::vector<int> signature =
        cfg.signature.empty() ? euclidean_signature(cfg.D) : cfg.signature;

    SweepResult result;
    result.reports.resize(static_cast<size_t>(cfg.count));

    auto run_one = [&](int i) {
        uint64_t stream = derive_stream_seed(cfg.master_seed,
                                             static_cast<uint64_t>(i));
        KinematicData kin = sample_kinematics(g, cfg.D, signature, stream);
        result.reports[static_cast<size_t>(i)] = genericity_report(g, kin, cfg.tol);
    };

    if (policy == ExecPolicy::parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < cfg.count; ++i) run_one(i);
#else
        for (int i = 0; i < cfg.count; ++i) run_one(i);  // no OpenMP: serial
#endif
    } else {
        for (int i = 0; i < cfg.count; ++i) run_one(i);
    }

    SweepSummary& s = result.summary;
    s.count = cfg.count;
    for (const GenericityReport& r : result.reports) {
        if (r.overall_pass) ++s.overall_passes;
        ++s.s_count_histogram[r.s_point_count];
        for (const DiagnosticEntry& d : r.diagnostics) {
            if (s.diagnostic_passes.find(d.name) == s.diagnostic_passes.end()) {
                s.diagnostic_passes[d.name] = 0;
                s.diagnostic_order.push_back(d.name);
            }
            if (d.pass) ++s.diagnostic_passes[d.name];
        }
    }
    s.pass_rate = static_cast<double>(s.overall_passes) /
                  static_cast<double>(cfg.count);
    return result;
}

}  // namespace dbx
