#pragma once

// Experiment orchestration: validated configs, deterministic per-sample
// seeding, run records with manifest/results/summary persistence, and the
// five experiment drivers plus report rendering.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <thread>

#include <json.hpp>

#include "counting.hpp"
#include "evolver.hpp"
#include "plant.hpp"

namespace nlslab {

using nlohmann::json;

inline constexpr const char* kVersion = "nlslab 1.0.0";

inline double probScalingExponent(int p) { return -1.0 / (p - 1); }

struct ExperimentConfig {
  std::string kind;  // convergence | longtime | scaling | tensor-suite | counting-suite
  int d = 1;
  int p = 5;
  double s = 0.0;
  double sPrime = std::numeric_limits<double>::quiet_NaN();  // default s - 0.05
  double tau = 0.1;
  double nu = 0.2;
  double dt = 1e-4;
  std::vector<long> Ns;
  int ensemble = 8;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string dataKind = "both";  // scaling: deterministic | random | both
  long quadNodeCap = 3072;
  int snapshotStride = 25;
  int suiteSize = 1500;  // tensor suite inequality checks
  std::string outDir;
  int schemaVersion = 1;

  double alpha() const { return s + d / 2.0; }
  double sPrimeOr() const { return std::isnan(sPrime) ? s - 0.05 : sPrime; }

  void validate() const {
    if (kind != "convergence" && kind != "longtime" && kind != "scaling" &&
        kind != "tensor-suite" && kind != "counting-suite")
      throw std::invalid_argument("unknown experiment kind '" + kind + "'");
    if (d < 1 || d > 2) throw std::invalid_argument("dimension must be 1 or 2");
    if (kind == "convergence" || kind == "longtime") {
      if (p < 3 || p % 2 == 0) throw std::invalid_argument("degree p must be odd and >= 3");
      if (d * (p - 1) < 4 || (d == 1 && p == 3))
        throw std::invalid_argument(
            "standing assumptions require d(p-1) >= 4 and (d,p) != (1,3)");
      for (long N : Ns) requireDyadic(N, "frequency N");
    }
    if (kind == "convergence" && s <= probScalingExponent(p))
      throw std::invalid_argument("convergence requires s > -1/(p-1)");
    if (kind == "longtime") {
      double cap = (p - 1) * (s - probScalingExponent(p));
      if (nu <= 0 || nu >= cap)
        throw std::invalid_argument("longtime requires 0 < nu < (p-1)(s - s_pr) = " +
                                    std::to_string(cap));
    }
    if (kind == "scaling" && Ns.size() < 3)
      throw std::invalid_argument("scaling needs >= 3 frequencies");
    if (ensemble < 1) throw std::invalid_argument("ensemble size must be >= 1");
    if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
    if (snapshotStride < 1 || snapshotStride > 100)
      throw std::invalid_argument("snapshot stride must be in [1, 100] steps");
  }

  json toJson() const {
    json j{{"schemaVersion", schemaVersion},
           {"kind", kind},
           {"d", d},
           {"p", p},
           {"s", s},
           {"sPrime", sPrimeOr()},
           {"tau", tau},
           {"nu", nu},
           {"dt", dt},
           {"Ns", Ns},
           {"ensemble", ensemble},
           {"seed", seed},
           {"threads", threads},
           {"dataKind", dataKind},
           {"quadNodeCap", quadNodeCap},
           {"snapshotStride", snapshotStride},
           {"suiteSize", suiteSize}};
    return j;
  }

  static ExperimentConfig fromJson(const json& j) {
    ExperimentConfig c;
    c.kind = j.value("kind", "");
    c.d = j.value("d", c.d);
    c.p = j.value("p", c.p);
    c.s = j.value("s", c.s);
    if (j.contains("sPrime")) c.sPrime = j["sPrime"].get<double>();
    c.tau = j.value("tau", c.tau);
    c.nu = j.value("nu", c.nu);
    c.dt = j.value("dt", c.dt);
    c.Ns = j.value("Ns", c.Ns);
    c.ensemble = j.value("ensemble", c.ensemble);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    c.dataKind = j.value("dataKind", c.dataKind);
    c.quadNodeCap = j.value("quadNodeCap", c.quadNodeCap);
    c.snapshotStride = j.value("snapshotStride", c.snapshotStride);
    c.suiteSize = j.value("suiteSize", c.suiteSize);
    c.schemaVersion = j.value("schemaVersion", c.schemaVersion);
    return c;
  }
};

struct RunRecord {
  json config;
  std::vector<std::uint64_t> sampleSeeds;
  std::string csvHeader;
  std::vector<std::string> csvRows;
  json summary;
  double wallSeconds = 0;
  std::string version = kVersion;
};

inline std::uint64_t sampleSeed(std::uint64_t master, int sample) {
  return hashKey(master, 0x73616d70, KVec{sample, 0});
}

// ---------------------------------------------------------------------------
// Persistence: manifest before compute, results + summary after.

inline void writeManifest(const ExperimentConfig& cfg, const std::vector<std::uint64_t>& seeds) {
  if (cfg.outDir.empty()) return;
  std::filesystem::create_directories(cfg.outDir);
  json m{{"version", kVersion}, {"config", cfg.toJson()}, {"sampleSeeds", seeds},
         {"status", "started"}};
  std::ofstream out(cfg.outDir + "/manifest.json");
  out << m.dump(2) << "\n";
}

inline void writeResults(const ExperimentConfig& cfg, const RunRecord& rec) {
  if (cfg.outDir.empty()) return;
  {
    std::ofstream out(cfg.outDir + "/results.csv");
    out << rec.csvHeader << "\n";
    for (const auto& row : rec.csvRows) out << row << "\n";
  }
  {
    std::ofstream out(cfg.outDir + "/summary.json");
    out << rec.summary.dump(2) << "\n";
  }
  json m{{"version", kVersion}, {"config", rec.config}, {"sampleSeeds", rec.sampleSeeds},
         {"status", "done"}, {"wallSeconds", rec.wallSeconds}};
  std::ofstream out(cfg.outDir + "/manifest.json");
  out << m.dump(2) << "\n";
}

// Ensemble-parallel loop; each worker owns a grid engine, reductions are by
// sample index so the result is independent of the worker count.
template <class Fn>
inline void parallelSamples(int n, int threads, Fn&& fn) {
  if (threads <= 1) {
    GridEngine<double> eng;
    for (int i = 0; i < n; ++i) fn(i, eng);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      GridEngine<double> eng;
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i, eng);
    });
  for (auto& t : pool) t.join();
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// convergence: median of D_N = sup_t ||u_{2N} - u_N||_{H^{s'}} and ratios.

inline RunRecord runConvergence(const ExperimentConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = cfg.toJson();
  for (int i = 0; i < cfg.ensemble; ++i) rec.sampleSeeds.push_back(sampleSeed(cfg.seed, i));
  writeManifest(cfg, rec.sampleSeeds);

  std::vector<long> levels = cfg.Ns;
  levels.push_back(cfg.Ns.back() * 2);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  // D[sample][Ns index]
  std::vector<std::vector<double>> D(cfg.ensemble, std::vector<double>(cfg.Ns.size(), 0.0));
  std::vector<int> selfCheckFails(cfg.ensemble, 0);
  parallelSamples(cfg.ensemble, cfg.threads, [&](int i, GridEngine<double>& eng) {
    std::map<long, Trajectory> trajByN;
    for (long N : levels) {
      GaussianDataSpec data{rec.sampleSeeds[i], cfg.d, cfg.alpha(), N, DataKind::PowerLaw};
      SolverConfig sc;
      sc.d = cfg.d;
      sc.p = cfg.p;
      sc.N = N;
      sc.wick = true;
      sc.sigma = sigmaN(cfg.d, cfg.alpha(), N);
      sc.dt = cfg.dt;
      sc.tau = cfg.tau;
      sc.snapshotStride = cfg.snapshotStride;
      LatticeField f0 = project(sampleData(data), N, Proj::Pi);
      trajByN.emplace(N, evolve(eng, sc, f0));
    }
    for (std::size_t ni = 0; ni < cfg.Ns.size(); ++ni) {
      const Trajectory& lo = trajByN.at(cfg.Ns[ni]);
      const Trajectory& hi = trajByN.at(cfg.Ns[ni] * 2);
      double sup = 0;
      for (std::size_t t = 0; t < lo.times.size(); ++t) {
        LatticeField diff = hi.snapshots[t];
        lo.snapshots[t].forEach([&](const KVec& k) {
          diff.at(k) -= lo.snapshots[t].at(k);
        });
        sup = std::max(sup, sobolevNorm(diff, cfg.sPrimeOr()));
      }
      D[i][ni] = sup;
      if (!lo.selfCheckPassed || !hi.selfCheckPassed) ++selfCheckFails[i];
    }
  });

  rec.csvHeader = "sample,N,D";
  for (int i = 0; i < cfg.ensemble; ++i)
    for (std::size_t ni = 0; ni < cfg.Ns.size(); ++ni)
      rec.csvRows.push_back(std::to_string(i) + "," + std::to_string(cfg.Ns[ni]) + "," +
                            fmt(D[i][ni]));

  std::vector<double> med;
  for (std::size_t ni = 0; ni < cfg.Ns.size(); ++ni) {
    std::vector<double> col;
    for (int i = 0; i < cfg.ensemble; ++i) col.push_back(D[i][ni]);
    med.push_back(median(col));
  }
  std::vector<double> ratios;
  for (std::size_t ni = 1; ni < med.size(); ++ni) ratios.push_back(med[ni] / med[ni - 1]);
  rec.summary = json{{"kind", cfg.kind}, {"Ns", cfg.Ns}, {"medianD", med},
                     {"medianRatios", ratios}};
  rec.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  writeResults(cfg, rec);
  return rec;
}

// ---------------------------------------------------------------------------
// longtime: normalized sup deviation from the gauged linear flow up to N^nu.

inline RunRecord runLongtime(const ExperimentConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = cfg.toJson();
  for (int i = 0; i < cfg.ensemble; ++i) rec.sampleSeeds.push_back(sampleSeed(cfg.seed, i));
  writeManifest(cfg, rec.sampleSeeds);

  std::vector<std::vector<double>> dev(cfg.Ns.size(),
                                       std::vector<double>(cfg.ensemble, 0.0));
  std::vector<std::vector<double>> tailBySample(cfg.Ns.size(),
                                                std::vector<double>(cfg.ensemble, 0.0));
  for (std::size_t ni = 0; ni < cfg.Ns.size(); ++ni) {
    long N = cfg.Ns[ni];
    parallelSamples(cfg.ensemble, cfg.threads, [&](int i, GridEngine<double>& eng) {
      GaussianDataSpec data{rec.sampleSeeds[i], cfg.d, cfg.alpha(), N,
                            DataKind::Homogeneous};
      LatticeField f0 = sampleData(data);
      SolverConfig sc;
      sc.d = cfg.d;
      sc.p = cfg.p;
      sc.N = N;
      sc.wick = false;
      sc.dt = cfg.dt;
      sc.tau = std::pow((double)N, cfg.nu);
      sc.snapshotStride = cfg.snapshotStride;
      Trajectory traj = evolve(eng, sc, f0);
      auto d = gaugedLinearDeviation(eng, traj, cfg.s);
      double norm0 = sobolevNorm(f0, cfg.s);
      dev[ni][i] = *std::max_element(d.begin(), d.end()) / norm0;
      // Band-limit health: mass in the outer quarter of the box.
      double outer = 0, total = 0;
      const LatticeField& uf = traj.snapshots.back();
      uf.forEach([&](const KVec& k) {
        double m = std::norm(uf.at(k));
        total += m;
        if (std::max(std::abs(k.x), std::abs(k.y)) > 3 * uf.K / 4) outer += m;
      });
      tailBySample[ni][i] = outer / total;
    });
  }
  std::vector<double> tailMass;
  for (auto& col : tailBySample)
    tailMass.push_back(*std::max_element(col.begin(), col.end()));

  rec.csvHeader = "sample,N,normalizedDeviation";
  for (std::size_t ni = 0; ni < cfg.Ns.size(); ++ni)
    for (int i = 0; i < cfg.ensemble; ++i)
      rec.csvRows.push_back(std::to_string(i) + "," + std::to_string(cfg.Ns[ni]) + "," +
                            fmt(dev[ni][i]));
  std::vector<double> med;
  for (auto& col : dev) med.push_back(median(col));
  rec.summary = json{{"kind", cfg.kind},
                     {"Ns", cfg.Ns},
                     {"medianNormalizedDeviation", med},
                     {"bandTailMassShare", tailMass},
                     {"tailFlagged", *std::max_element(tailMass.begin(), tailMass.end()) > 1e-6}};
  rec.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  writeResults(cfg, rec);
  return rec;
}

// ---------------------------------------------------------------------------
// scaling: wrapper over the Picard scaling study.

inline RunRecord runScaling(const ExperimentConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = cfg.toJson();
  for (int i = 0; i < cfg.ensemble; ++i) rec.sampleSeeds.push_back(sampleSeed(cfg.seed, i));
  writeManifest(cfg, rec.sampleSeeds);

  rec.csvHeader = "dataKind,N,median,mean";
  rec.summary = json{{"kind", cfg.kind}, {"Ns", cfg.Ns}};
  GridEngine<float> eng;  // quadrature hot path runs in single precision
  for (std::string kindName : {"deterministic", "random"}) {
    if (cfg.dataKind != "both" && cfg.dataKind != kindName) continue;
    bool rnd = kindName == "random";
    ScalingResult r = scalingStudy(eng, cfg.d, cfg.p, cfg.s, cfg.Ns, cfg.ensemble, rnd,
                                   cfg.seed, 1.0, cfg.quadNodeCap);
    for (std::size_t i = 0; i < r.Ns.size(); ++i)
      rec.csvRows.push_back(kindName + "," + std::to_string(r.Ns[i]) + "," +
                            fmt(r.medians[i]) + "," + fmt(r.means[i]));
    rec.summary[kindName] = json{{"slope", r.fit.slope},
                                 {"stderr", r.fit.stderror},
                                 {"predictedSlope", r.predictedSlope}};
  }
  rec.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  writeResults(cfg, rec);
  return rec;
}

// ---------------------------------------------------------------------------
// tensor-suite: randomized inequality batch; any violation fails the suite.

namespace detail {

inline LatticeBox randomBox(std::uint64_t h, int maxSide) {
  int side = 2 + (int)uniformIndex(h, maxSide - 1);
  return LatticeBox::interval(0, side - 1);
}

inline LabeledTensor randomSuiteTensor(const std::string& labels, std::uint64_t seed,
                                       int maxSide) {
  std::vector<TensorAxis> axes;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    TensorAxis ax;
    ax.label = labels[i];
    ax.sign = (hashKey(seed, 0x7a, KVec{(int)i, 0}) & 1) ? 1 : -1;
    ax.box = randomBox(hashKey(seed, 0x62, KVec{(int)i, 0}), maxSide);
    axes.push_back(ax);
  }
  LabeledTensor h = randomTensor(axes, seed);
  // Occasionally sparsify to exercise masked instances.
  if (hashKey(seed, 0x73, KVec{0, 0}) % 3 == 0) {
    for (std::size_t i = 0; i < h.val.size(); ++i)
      if (hashKey(seed, 0x74, KVec{(int)i, 1}) % 2 == 0) h.val[i] = 0;
  }
  return h;
}

}  // namespace detail

inline RunRecord runTensorSuite(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.suiteSize > 100000) throw std::invalid_argument("suite size cap exceeded");
  auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = cfg.toJson();
  writeManifest(cfg, rec.sampleSeeds);
  rec.csvHeader = "check,instance,lhs,rhs,satisfied";

  int nBilinear = (cfg.suiteSize * 2) / 3, nMulti = cfg.suiteSize - (cfg.suiteSize * 2) / 3;
  int violations = 0, checks = 0;
  double minMargin = std::numeric_limits<double>::infinity();

  for (int i = 0; i < nBilinear; ++i) {
    std::uint64_t s = hashKey(cfg.seed, 0xb1, KVec{i, 0});
    int r1 = 2 + (int)(s % 3), r2 = 2 + (int)((s >> 8) % 3);
    int nShared = 1 + (int)((s >> 16) % (std::min(r1, r2) - 1 ? std::min(r1, r2) - 1 : 1));
    nShared = std::min({nShared, r1 - 1, r2 - 1});
    std::string L1, L2;
    for (int a = 0; a < r1; ++a) L1 += (char)('a' + a);
    for (int a = 0; a < nShared; ++a) L2 += (char)('a' + a);
    for (int a = 0; a < r2 - nShared; ++a) L2 += (char)('m' + a);
    LabeledTensor h1 = detail::randomSuiteTensor(L1, mix64(s + 1), 5);
    LabeledTensor h2 = detail::randomSuiteTensor(L2, mix64(s + 2), 5);
    // Shared axes must agree in range.
    for (int a = 0; a < nShared; ++a)
      h2.axes[a].box = h1.axes[a].box;
    h2 = randomTensor(h2.axes, mix64(s + 2));
    std::string symdiff, X, Y;
    for (int a = nShared; a < r1; ++a) symdiff += L1[a];
    for (int a = nShared; a < r2; ++a) symdiff += L2[a];
    for (std::size_t a = 0; a < symdiff.size(); ++a)
      ((hashKey(s, 0x78, KVec{(int)a, 0}) & 1) ? X : Y) += symdiff[a];
    InequalityCheck c = checkBilinear(h1, h2, X, Y);
    ++checks;
    if (!c.satisfied) ++violations;
    minMargin = std::min(minMargin, c.rhs - c.lhs);
    rec.csvRows.push_back("bilinear," + std::to_string(i) + "," + fmt(c.lhs) + "," +
                          fmt(c.rhs) + "," + (c.satisfied ? "1" : "0"));
  }

  for (int i = 0; i < nMulti; ++i) {
    std::uint64_t s = hashKey(cfg.seed, 0xb2, KVec{i, 0});
    // Chain of three tensors: h1(abc), h2(cde), h3(efg) with random boxes.
    LabeledTensor h1 = detail::randomSuiteTensor("abc", mix64(s + 1), 4);
    LabeledTensor h2 = detail::randomSuiteTensor("cde", mix64(s + 2), 4);
    LabeledTensor h3 = detail::randomSuiteTensor("efg", mix64(s + 3), 4);
    h2.axes[0].box = h1.axes[2].box;
    h3.axes[0].box = h2.axes[2].box;
    h2 = randomTensor(h2.axes, mix64(s + 2));
    h3 = randomTensor(h3.axes, mix64(s + 3));
    std::string once = "abdfg", X, Y;
    for (std::size_t a = 0; a < once.size(); ++a)
      ((hashKey(s, 0x79, KVec{(int)a, 0}) & 1) ? X : Y) += once[a];
    InequalityCheck c = checkMultilinear({h1, h2, h3}, X, Y);
    ++checks;
    if (!c.satisfied) ++violations;
    minMargin = std::min(minMargin, c.rhs - c.lhs);
    rec.csvRows.push_back("multilinear," + std::to_string(i) + "," + fmt(c.lhs) + "," +
                          fmt(c.rhs) + "," + (c.satisfied ? "1" : "0"));
  }

  rec.summary = json{{"kind", cfg.kind},
                     {"checks", checks},
                     {"violations", violations},
                     {"minMargin", minMargin},
                     {"pass", violations == 0}};
  rec.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  writeResults(cfg, rec);
  return rec;
}

// ---------------------------------------------------------------------------
// counting-suite: worst-case cubic slopes plus Schur-bound certification.

inline RunRecord runCountingSuite(const ExperimentConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.config = cfg.toJson();
  writeManifest(cfg, rec.sampleSeeds);
  rec.csvHeader = "instance,M,count";

  json slopes;
  for (int d : {1, 2}) {
    std::vector<long> Ms = d == 1 ? std::vector<long>{8, 16, 32, 64, 128, 256}
                                  : std::vector<long>{8, 16, 32, 64};
    std::vector<long> counts;
    for (long M : Ms) {
      counts.push_back(cubicWorstCase(d, M, cfg.seed));
      rec.csvRows.push_back("cubic-d" + std::to_string(d) + "," + std::to_string(M) + "," +
                            std::to_string(counts.back()));
    }
    ExponentFit f = fitExponent(Ms, counts);
    slopes["d" + std::to_string(d)] =
        json{{"slope", f.fit.slope}, {"stderr", f.fit.stderror}, {"dropped", f.dropped},
             {"target", d == 1 ? 0.3 : 2.3}};
  }

  // Schur certification on random sparse indicator tensors.
  int schurViolations = 0;
  const int nSchur = 500;
  for (int i = 0; i < nSchur; ++i) {
    std::uint64_t s = hashKey(cfg.seed, 0x5c, KVec{i, 0});
    int r = 2 + (int)(s % 2);
    std::string labels = r == 2 ? "xy" : "xye";
    std::vector<TensorAxis> axes;
    for (int a = 0; a < r; ++a)
      axes.push_back({labels[(std::size_t)a], 1,
                      detail::randomBox(hashKey(s, 0x42, KVec{a, 0}), 8)});
    LabeledTensor h(axes);
    for (std::size_t e = 0; e < h.val.size(); ++e)
      h.val[e] = (hashKey(s, 0x45, KVec{(int)e, 2}) % 4 == 0) ? cplx(1, 0) : cplx(0, 0);
    double bound = schurBound(h, "x", "y");
    double norm = opNorm(h, "x", "y");
    if (bound < norm * (1 - 1e-12) - 1e-12) ++schurViolations;
  }

  rec.summary = json{{"kind", cfg.kind},
                     {"cubicSlopes", slopes},
                     {"schurChecks", nSchur},
                     {"schurViolations", schurViolations},
                     {"pass", schurViolations == 0 &&
                                  slopes["d1"]["slope"].get<double>() <= 0.3 &&
                                  slopes["d2"]["slope"].get<double>() <= 2.3}};
  rec.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  writeResults(cfg, rec);
  return rec;
}

inline RunRecord runExperiment(const ExperimentConfig& cfg) {
  if (cfg.kind == "convergence") return runConvergence(cfg);
  if (cfg.kind == "longtime") return runLongtime(cfg);
  if (cfg.kind == "scaling") return runScaling(cfg);
  if (cfg.kind == "tensor-suite") return runTensorSuite(cfg);
  if (cfg.kind == "counting-suite") return runCountingSuite(cfg);
  throw std::invalid_argument("unknown experiment kind '" + cfg.kind + "'");
}

// Human-readable rendering; the summary JSON is embedded verbatim so the
// report round-trips.
inline std::string report(const RunRecord& rec) {
  std::ostringstream os;
  os << "== " << rec.version << " run report ==\n";
  if (rec.config.contains("kind")) os << "kind: " << rec.config["kind"].get<std::string>() << "\n";
  os << "samples: " << rec.sampleSeeds.size() << "\n";
  os << "rows: " << rec.csvRows.size() << "\n";
  os << "summary:\n" << rec.summary.dump(2) << "\n";
  return os.str();
}

inline json parseReportSummary(const std::string& text) {
  auto pos = text.find("summary:\n");
  if (pos == std::string::npos) return json::object();
  return json::parse(text.substr(pos + 9));
}

}  // namespace nlslab
