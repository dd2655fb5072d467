#include <algorithm>
#include <atomic>
#include <random>
#include <set>
#include <thread>

#include "smallpoints/harness.hpp"

namespace smallpoints {

namespace {

const std::vector<std::string> kChecks = {
    "ogg",      "local_conductor", "jdisc",   "reduction_rules", "jensen",      "constants_chain",
    "theorem1", "theorem2",        "prop41",  "lemma31",         "lemma32",     "nonarch_sum",
    "parallelogram", "decomposition"};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

// Sort key for places: "-" first, then the real place, then primes numerically.
std::pair<int, BigInt> place_key(const std::string& place) {
  if (place == "-") return {0, 0};
  if (place == "inf") return {1, 0};
  return {2, BigInt(place)};
}

class CurveRun {
 public:
  CurveRun(const CurveRecord& rec, const RunConfig& cfg) : rec_(rec), cfg_(cfg) {}

  std::vector<BoundReport> run() {
    try {
      body();
    } catch (const Error& e) {
      add(skipped_report("curve", e.what()));
    }
    for (auto& r : out_) {
      r.label = rec_.label;
      if (r.place.empty()) r.place = "-";
    }
    return std::move(out_);
  }

 private:
  void add(BoundReport r) { out_.push_back(std::move(r)); }

  // Runs one check, turning a library error into a skipped report.
  template <class F>
  void guarded(const std::string& name, F&& f) {
    if (!cfg_.enabled(name)) return;
    try {
      f();
    } catch (const Error& e) {
      add(skipped_report(name, e.what()));
    }
  }

  void body() {
    GlobalReductionData g = global_data(rec_.model, cfg_.factor_bound);
    for (auto& l : g.local) l.delta += cfg_.delta_shift;
    sigma_ = g.sigma;
    HeightConfig hc = cfg_.height;
    CurveHeights heights(g, hc);
    const TorsionSubgroup torsion = torsion_subgroup(g.minimal.model, cfg_.factor_bound);
    CurveContext ctx{rec_.label, &heights, &torsion, curve_inputs(g)};
    const double slack = cfg_.tolerance;
    const auto& k = cfg_.constants;

    std::vector<CurvePoint> points;
    for (const auto& P : rec_.points) points.push_back(heights.to_minimal(P));
    const std::set<CurvePoint> tors(torsion.points.begin(), torsion.points.end());
    std::vector<CurvePoint> nontorsion;
    for (const auto& P : points)
      if (!tors.count(P)) nontorsion.push_back(P);

    for (const auto& l : g.local) {
      guarded("ogg", [&] { add(verify_ogg(l)); });
      guarded("local_conductor", [&] { add(verify_local_conductor_ineq(l)); });
      guarded("jdisc", [&] { add(verify_jdisc(g.minimal.model, l)); });
      guarded("reduction_rules", [&] { add(verify_reduction_rules(l)); });
    }
    guarded("jensen", [&] { add(verify_jensen(g, slack)); });
    guarded("constants_chain", [&] { add(verify_constants_chain(ctx.inputs, k, slack)); });
    guarded("theorem1", [&] { add(verify_theorem1(ctx, k, slack)); });
    guarded("theorem2", [&] { add(verify_theorem2(ctx, nontorsion, k, slack, hc.series_tol)); });

    const std::vector<CurvePoint> pool = sample_pool(g.minimal.model, torsion.points, nontorsion);
    guarded("prop41", [&] { add(verify_prop41(ctx, pool, k, slack)); });

    const auto sets = sample_sets(pool, cfg_.sets_per_curve, cfg_.seed, rec_.label);
    static const char* kSetChecks[] = {"lemma31", "lemma32", "nonarch_sum", "parallelogram",
                                       "decomposition"};
    if (sets.empty())
      for (const char* name : kSetChecks)
        if (cfg_.enabled(name)) add(skipped_report(name, "fewer than two points available"));
    for (std::size_t s = 0; s < sets.size(); ++s) {
      const auto& Z = sets[s];
      const std::string tag = "set=" + std::to_string(s) + " ";
      auto tagged = [&](BoundReport r) {
        r.context = tag + r.context;
        add(std::move(r));
      };
      for (const auto& l : g.local)
        guarded("lemma31", [&] { tagged(verify_lemma31(ctx, Z, l, slack)); });
      guarded("lemma32", [&] { tagged(verify_lemma32(ctx, Z, k, slack)); });
      guarded("nonarch_sum", [&] { tagged(verify_nonarch_sum(ctx, Z, slack)); });
      guarded("parallelogram", [&] { tagged(verify_parallelogram(ctx, Z, slack)); });
      guarded("decomposition", [&] { tagged(verify_decomposition(ctx, Z, slack)); });
    }
  }

  const CurveRecord& rec_;
  const RunConfig& cfg_;
  std::vector<BoundReport> out_;
  double sigma_ = 1.0;

 public:
  double sigma() const { return sigma_; }
};

}  // namespace

const std::vector<std::string>& all_check_names() { return kChecks; }

std::set<std::string> parse_check_list(std::string_view csv) {
  std::set<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= csv.size(); ++i) {
    if (i < csv.size() && csv[i] != ',') continue;
    std::string name(csv.substr(start, i - start));
    start = i + 1;
    if (name.empty()) continue;
    if (std::find(kChecks.begin(), kChecks.end(), name) == kChecks.end())
      throw InvalidArgument("unknown check '" + name + "'");
    out.insert(name);
  }
  return out;
}

std::vector<CurvePoint> sample_pool(const WeierstrassModel& m, std::span<const CurvePoint> torsion,
                                    std::span<const CurvePoint> generators) {
  std::set<CurvePoint> pool(torsion.begin(), torsion.end());
  pool.insert(CurvePoint::infinity());
  for (const auto& G : generators)
    for (int n : {-2, -1, 1, 2}) pool.insert(scalar_mul(m, n, G));
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      pool.insert(add_points(m, generators[i], generators[j]));
      pool.insert(subtract_points(m, generators[i], generators[j]));
    }
  if (!generators.empty())
    for (const auto& T : torsion) pool.insert(add_points(m, T, generators[0]));
  return {pool.begin(), pool.end()};
}

std::vector<std::vector<CurvePoint>> sample_sets(const std::vector<CurvePoint>& pool, int count,
                                                 std::uint64_t seed, const std::string& label) {
  std::vector<std::vector<CurvePoint>> out;
  if (pool.size() < 2) return out;
  std::mt19937_64 rng(seed ^ fnv1a(label));
  const std::uint64_t max_size = std::min<std::uint64_t>(8, pool.size());
  for (int c = 0; c < count; ++c) {
    const std::uint64_t size = 2 + rng() % (max_size - 1);
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::uint64_t i = 0; i < size; ++i) std::swap(idx[i], idx[i + rng() % (idx.size() - i)]);
    std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<long>(size));
    std::sort(chosen.begin(), chosen.end());
    std::vector<CurvePoint> Z;
    for (auto i : chosen) Z.push_back(pool[i]);
    out.push_back(std::move(Z));
  }
  return out;
}

SuiteResult run_suite(const std::vector<CurveRecord>& records, const RunConfig& config) {
  if (config.parallelism < 1) throw InvalidArgument("parallelism must be >= 1");
  std::vector<std::vector<BoundReport>> per_curve(records.size());
  std::vector<double> sigmas(records.size(), 1.0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      CurveRun run(records[i], config);
      per_curve[i] = run.run();
      sigmas[i] = run.sigma();
    }
  };
  const int threads = std::min<int>(config.parallelism, std::max<std::size_t>(1, records.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SuiteResult res;
  for (auto& v : per_curve)
    for (auto& r : v) res.reports.push_back(std::move(r));
  std::stable_sort(res.reports.begin(), res.reports.end(), [](const BoundReport& a, const BoundReport& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.check != b.check) return a.check < b.check;
    return place_key(a.place) < place_key(b.place);
  });
  for (const auto& r : res.reports) {
    if (r.status == CheckStatus::Pass) ++res.passed;
    else if (r.status == CheckStatus::Fail) ++res.failed;
    else ++res.skipped;
  }
  for (double s : sigmas) res.max_sigma = std::max(res.max_sigma, s);
  return res;
}

}  // namespace smallpoints
