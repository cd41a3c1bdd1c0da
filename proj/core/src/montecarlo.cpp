#include "fpp/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

#include "fpp/rng.hpp"

namespace fpp {

namespace {

struct Tally {
    uint64_t n_true = 0, n_false = 0, n_undecided = 0, n_box_invalid = 0;

    void add(const Tally& o) {
        n_true += o.n_true;
        n_false += o.n_false;
        n_undecided += o.n_undecided;
        n_box_invalid += o.n_box_invalid;
    }
    void count(Ternary t) {
        switch (t) {
            case Ternary::True: ++n_true; break;
            case Ternary::False: ++n_false; break;
            default: ++n_undecided; break;
        }
    }
};

EstimateRecord finish(std::string label, int64_t n, uint64_t samples, uint64_t master,
                      const Tally& tally, double seconds) {
    EstimateRecord rec;
    rec.event = std::move(label);
    rec.n = n;
    rec.samples = samples;
    rec.n_true = tally.n_true;
    rec.n_false = tally.n_false;
    rec.n_undecided = tally.n_undecided;
    rec.n_box_invalid = tally.n_box_invalid;
    rec.p_lo = static_cast<double>(tally.n_true) / static_cast<double>(samples);
    rec.p_hi = static_cast<double>(tally.n_true + tally.n_undecided) / static_cast<double>(samples);
    rec.ci_lo = wilson(tally.n_true, samples);
    rec.ci_hi = wilson(tally.n_true + tally.n_undecided, samples);
    rec.seconds = seconds;
    rec.seed = master;
    return rec;
}

// run fn(sample_index) over [0, samples) on opts.threads workers
template <typename F>
void parallel_samples(uint64_t samples, int threads, F&& fn) {
    if (threads <= 1) {
        for (uint64_t s = 0; s < samples; ++s) fn(s);
        return;
    }
    std::atomic<uint64_t> next{0};
    auto worker = [&] {
        for (uint64_t s = next.fetch_add(1); s < samples; s = next.fetch_add(1)) fn(s);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// detect with the adaptive box policy: kappa doubles on guard failure, the
// environment re-drawn from the same per-sample stream on the larger box
Ternary run_sample(const EventSpec& spec, const WeightDist& dist, uint64_t master, uint64_t index,
                   const McOptions& opts, bool& box_invalid) {
    box_invalid = false;
    for (int64_t kappa = opts.policy.kappa;; kappa *= 2) {
        const Box box = policy_box(spec, kappa);
        const Environment env =
            Environment::sample(box, dist, derive_stream(master, index), master, index);
        const DetectResult res = detect(spec, env, opts.budget);
        if (res.box_valid) return res.decision.outcome;
        if (kappa * 2 > opts.policy.kappa_max) {
            box_invalid = true;
            return Ternary::Undecided;
        }
    }
}

}  // namespace

WilsonInterval wilson(uint64_t k, uint64_t total, double z) {
    if (total == 0) throw std::domain_error("wilson: total == 0");
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(k) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

EstimateRecord estimate(const EventSpec& spec, const WeightDist& dist, uint64_t samples,
                        uint64_t master, const McOptions& opts) {
    if (samples < 1) throw std::invalid_argument("estimate: samples >= 1 required");
    const auto t0 = std::chrono::steady_clock::now();

    // counts only: aggregation is order-independent across workers
    std::atomic<uint64_t> agg_true{0}, agg_false{0}, agg_undec{0}, agg_box{0};
    parallel_samples(samples, opts.threads, [&](uint64_t s) {
        bool box_invalid = false;
        const Ternary out = run_sample(spec, dist, master, s, opts, box_invalid);
        switch (out) {
            case Ternary::True: agg_true.fetch_add(1); break;
            case Ternary::False: agg_false.fetch_add(1); break;
            default:
                agg_undec.fetch_add(1);
                if (box_invalid) agg_box.fetch_add(1);
                break;
        }
    });
    Tally tally;
    tally.n_true = agg_true.load();
    tally.n_false = agg_false.load();
    tally.n_undecided = agg_undec.load();
    tally.n_box_invalid = agg_box.load();

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(spec.label(), spec.n, samples, master, tally, secs);
}

std::vector<EstimateRecord> estimate_sphere_family(EventFamily family, int dim, int64_t n,
                                                   const WeightDist& dist, uint64_t samples,
                                                   uint64_t master, const McOptions& opts) {
    if (family != EventFamily::Thm1Item2 && family != EventFamily::Thm2Item2) {
        throw std::invalid_argument("estimate_sphere_family: item-2 families only");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const bool pairs = family == EventFamily::Thm1Item2;

    // fixed probe set, shared by all samples
    const Box probe_box = Box::centered(dim, n + 1);
    std::vector<EventSpec> specs;
    if (pairs) {
        for (const auto& [y, y2] : sphere_adjacent_pairs(probe_box, n)) {
            specs.push_back(EventSpec::thm1item2(dim, n, y, y2));
        }
    } else {
        for (const auto& u : enumerate_sphere(probe_box, n)) {
            specs.push_back(EventSpec::thm2item2(dim, n, u));
        }
    }

    std::vector<std::atomic<uint64_t>> a_true(specs.size()), a_false(specs.size()),
        a_undec(specs.size());
    for (auto& a : a_true) a.store(0);
    for (auto& a : a_false) a.store(0);
    for (auto& a : a_undec) a.store(0);
    std::atomic<uint64_t> a_box{0};

    parallel_samples(samples, opts.threads, [&](uint64_t s) {
        for (int64_t kappa = opts.policy.kappa;; kappa *= 2) {
            const EventSpec probe = specs.front();  // same core box for the whole family
            const Box box = policy_box(probe, kappa);
            const Environment env =
                Environment::sample(box, dist, derive_stream(master, s), master, s);
            const VertexId v0 = box.index_of(Coords(dim, 0));
            Coords e2(dim, 0);
            e2[1] = 1;
            const VertexId v1 = box.index_of(e2);

            // shared forward fields; per-target fields cached across probes
            const auto f0 = shortest_field_seeded(env, {{v0, 0}});
            const auto f1 = shortest_field_seeded(env, {{v1, 0}});

            // box guard: geodesics from both sources to the whole sphere
            std::vector<VertexId> sphere_ids;
            for (const auto& zc : enumerate_sphere(box, n)) sphere_ids.push_back(box.index_of(zc));
            bool valid = true;
            for (VertexId src : {v0, v1}) {
                for (VertexId v : geodesic_union_vertices(env, src, sphere_ids)) {
                    if (box.on_boundary(v)) valid = false;
                }
            }
            if (!valid) {
                if (kappa * 2 > opts.policy.kappa_max) {
                    a_box.fetch_add(1);
                    for (auto& a : a_undec) a.fetch_add(1);
                    return;
                }
                continue;
            }

            std::map<VertexId, TimeField> target_fields;
            auto field_from = [&](VertexId t) -> const TimeField& {
                auto it = target_fields.find(t);
                if (it == target_fields.end()) {
                    it = target_fields.emplace(t, shortest_field_seeded(env, {{t, 0}})).first;
                }
                return it->second;
            };
            auto dag_between = [&](VertexId src, const TimeField& fs, VertexId t) {
                return geodesic_dag_from_fields(env, src, t, fs, field_from(t));
            };

            for (size_t p = 0; p < specs.size(); ++p) {
                Ternary out;
                if (pairs) {
                    const VertexId ty = box.index_of(specs[p].y);
                    const VertexId ty2 = box.index_of(specs[p].y2);
                    const auto da = dag_between(v0, f0, ty);
                    const auto db = dag_between(v1, f1, ty2);
                    out = disjoint_dag_pair(da, db, opts.budget).outcome;
                } else {
                    const VertexId tu = box.index_of(specs[p].u);
                    const auto dag = dag_between(v0, f0, tu);
                    out = internally_disjoint_pair(dag).outcome;
                }
                switch (out) {
                    case Ternary::True: a_true[p].fetch_add(1); break;
                    case Ternary::False: a_false[p].fetch_add(1); break;
                    default: a_undec[p].fetch_add(1); break;
                }
            }
            return;
        }
    });

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::vector<EstimateRecord> records;
    for (size_t p = 0; p < specs.size(); ++p) {
        Tally t;
        t.n_true = a_true[p].load();
        t.n_false = a_false[p].load();
        t.n_undecided = a_undec[p].load();
        t.n_box_invalid = a_box.load();
        records.push_back(finish(specs[p].label(), n, samples, master, t, secs));
    }
    // append the reported maximum
    const auto best = std::max_element(
        records.begin(), records.end(), [](const EstimateRecord& a, const EstimateRecord& b) {
            return std::pair(a.p_lo, a.p_hi) < std::pair(b.p_lo, b.p_hi);
        });
    EstimateRecord max_rec = *best;
    max_rec.event = (pairs ? std::string("thm1item2_max(n=") : std::string("thm2item2_max(n=")) +
                    std::to_string(n) + ")";
    records.push_back(std::move(max_rec));
    return records;
}

ScanResult scan_n(const EventSpec& base, const std::vector<int64_t>& ns, const WeightDist& dist,
                  uint64_t samples, uint64_t master, const McOptions& opts) {
    if (ns.empty() || !std::is_sorted(ns.begin(), ns.end())) {
        throw std::invalid_argument("scan_n: n-list must be non-empty increasing");
    }
    ScanResult out;
    for (int64_t n : ns) {
        if (base.family == EventFamily::Thm1Item2 || base.family == EventFamily::Thm2Item2) {
            auto records =
                estimate_sphere_family(base.family, base.dim, n, dist, samples, master, opts);
            out.records.push_back(records.back());
        } else {
            EventSpec spec = base;
            spec.n = n;
            out.records.push_back(estimate(spec, dist, samples, master, opts));
        }
    }
    // log-log least squares on the strictly positive p_lo rows
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& r : out.records) {
        if (r.p_lo <= 0.0) continue;
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(r.p_lo);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    out.slope_points = m;
    if (m >= 2) {
        const double denom = m * sxx - sx * sx;
        out.slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
        double ss_res = 0.0;
        const double intercept = (sy - out.slope * sx) / m;
        for (const auto& r : out.records) {
            if (r.p_lo <= 0.0) continue;
            const double x = std::log(static_cast<double>(r.n));
            const double y = std::log(r.p_lo);
            const double e = y - (intercept + out.slope * x);
            ss_res += e * e;
        }
        if (m > 2 && denom > 0.0) {
            out.slope_se = std::sqrt(ss_res / (m - 2) / (sxx - sx * sx / m));
        }
    } else {
        out.slope = std::numeric_limits<double>::quiet_NaN();
        out.slope_se = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

}  // namespace fpp
