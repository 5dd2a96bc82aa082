#pragma once

// Skeleton plants (leaves with signs and dyadic frequencies, pairings, memory
// set) and the simple merging / trimming operations on plant-labeled tensors.
//
// Conventions: a plant-labeled tensor's first axis is its root; a merge base
// has the output root axis first, followed by one axis per input carrying that
// input's root label.

#include "randomdata.hpp"
#include "tensor.hpp"

namespace nlslab {

struct PlantLeaf {
  char label = 'a';
  int sign = +1;
  long freq = 1;  // dyadic N_l
};

struct SkeletonPlant {
  std::vector<PlantLeaf> leaves;
  std::vector<std::pair<char, char>> pairings;  // disjoint, opposite sign, equal freq
  long freq = 1;                                // plant frequency N
  std::vector<double> memory;                   // past frequencies; 1/2 sentinel allowed

  const PlantLeaf& leaf(char label) const {
    for (const auto& l : leaves)
      if (l.label == label) return l;
    throw std::invalid_argument(std::string("unknown leaf '") + label + "'");
  }
  bool isPaired(char label) const {
    for (auto& [a, b] : pairings)
      if (a == label || b == label) return true;
    return false;
  }

  void validate() const {
    requireDyadic(freq, "plant frequency");
    std::set<char> seen;
    for (const auto& l : leaves) {
      requireDyadic(l.freq, "leaf frequency");
      if (l.freq > freq) throw std::invalid_argument("leaf frequency exceeds plant frequency");
      if (!seen.insert(l.label).second) throw std::invalid_argument("duplicate leaf label");
    }
    std::set<char> used;
    for (auto& [a, b] : pairings) {
      const PlantLeaf &la = leaf(a), &lb = leaf(b);
      if (la.sign == lb.sign) throw std::invalid_argument("pairing requires opposite signs");
      if (la.freq != lb.freq) throw std::invalid_argument("pairing requires equal frequencies");
      if (!used.insert(a).second || !used.insert(b).second)
        throw std::invalid_argument("pairings must be disjoint");
    }
    for (double m : memory)
      if (m > (double)freq) throw std::invalid_argument("memory frequency exceeds plant frequency");
  }
};

namespace detail {

// Multiply a tensor along one axis by a per-point weight.
template <class W>
inline void scaleAxis(LabeledTensor& h, char label, W&& weight) {
  int ax = h.axisOf(label);
  std::vector<cplx> w(h.axes[ax].box.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight(h.axes[ax].box.point(i));
  std::size_t lin = 0;
  std::vector<std::size_t> idx(h.rank(), 0);
  for (; lin < h.val.size(); ++lin) {
    h.val[lin] *= w[idx[ax]];
    for (int i = h.rank() - 1; i >= 0; --i) {
      if (++idx[i] < h.axes[i].box.size()) break;
      idx[i] = 0;
    }
  }
}

// Contract one axis against a per-point weight vector.
inline LabeledTensor contractAxis(const LabeledTensor& h, char label,
                                  const std::vector<cplx>& w) {
  int ax = h.axisOf(label);
  if (w.size() != h.axes[ax].box.size()) throw std::invalid_argument("weight size mismatch");
  std::vector<TensorAxis> outAxes;
  for (int i = 0; i < h.rank(); ++i)
    if (i != ax) outAxes.push_back(h.axes[i]);
  LabeledTensor out(outAxes);
  std::vector<std::size_t> oIdx(out.rank());
  h.forEachEntry([&](const std::vector<std::size_t>& idx, const cplx& v) {
    for (int i = 0, o = 0; i < h.rank(); ++i)
      if (i != ax) oIdx[o++] = idx[i];
    out.at(oIdx) += w[idx[ax]] * v;
  });
  out.provenanceSeed = h.provenanceSeed;
  return out;
}

}  // namespace detail

struct PlantTensor {
  SkeletonPlant plant;
  LabeledTensor tensor;
};

// Simple merging of inputs through a base tensor.  Each chosen pairing
// (la, lb) joins leaves of two different inputs with opposite signs and equal
// frequencies; both paired axes are weighted by <k>^{-alpha} and identified
// (summed).  Root axes are contracted against the base.  The merged plant
// gains one past whose frequency is the second maximum of the input plant
// frequencies (sentinel 1/2 when there is a single input).
inline PlantTensor mergeSimple(const std::vector<PlantTensor>& inputs,
                               const LabeledTensor& base,
                               const std::vector<std::pair<char, char>>& pairings,
                               double alpha) {
  if (inputs.empty()) throw std::invalid_argument("merge needs >= 1 input");
  if (base.rank() != (int)inputs.size() + 1)
    throw std::invalid_argument("base must have one axis per input plus the output axis");
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    inputs[j].plant.validate();
    char root = inputs[j].tensor.axes[0].label;
    if (!base.hasLabel(root))
      throw std::invalid_argument(std::string("base lacks root axis '") + root + "'");
  }

  // Locate and validate the chosen pairings.
  auto ownerOf = [&](char l) -> int {
    for (std::size_t j = 0; j < inputs.size(); ++j)
      if (inputs[j].tensor.hasLabel(l) && inputs[j].tensor.axes[0].label != l) return (int)j;
    throw std::invalid_argument(std::string("pairing label '") + l + "' is not an input leaf");
  };
  std::set<char> pairedLabels;
  for (auto& [la, lb] : pairings) {
    int ja = ownerOf(la), jb = ownerOf(lb);
    if (ja == jb) throw std::invalid_argument("pairing must join different inputs");
    const PlantLeaf &A = inputs[ja].plant.leaf(la), &B = inputs[jb].plant.leaf(lb);
    if (A.sign == B.sign) throw std::invalid_argument("paired leaves must have opposite signs");
    if (A.freq != B.freq) throw std::invalid_argument("paired leaves must share a frequency");
    pairedLabels.insert(la);
    pairedLabels.insert(lb);
  }

  // Weight paired axes and relabel the partner onto the first label so the
  // semi-product identifies and sums them.
  std::vector<LabeledTensor> hs;
  for (const auto& in : inputs) hs.push_back(in.tensor);
  auto weight = [alpha](const KVec& k) { return cplx(std::pow(bracket(k), -alpha), 0); };
  for (auto& [la, lb] : pairings) {
    int ja = ownerOf(la), jb = ownerOf(lb);
    detail::scaleAxis(hs[ja], la, weight);
    detail::scaleAxis(hs[jb], lb, weight);
    hs[jb].axes[hs[jb].axisOf(lb)].label = la;
  }

  LabeledTensor merged = base;
  for (auto& h : hs) merged = semiProduct(merged, h, sharedLabels(merged, h));

  // Merged plant record.
  SkeletonPlant plant;
  plant.freq = 1;
  std::vector<long> inputFreqs;
  for (const auto& in : inputs) {
    inputFreqs.push_back(in.plant.freq);
    plant.freq = std::max(plant.freq, in.plant.freq);
    for (const auto& l : in.plant.leaves) plant.leaves.push_back(l);
    for (auto& pr : in.plant.pairings) plant.pairings.push_back(pr);
    for (double m : in.plant.memory) plant.memory.push_back(m);
  }
  for (auto& [la, lb] : pairings) plant.pairings.push_back({la, lb});
  std::sort(inputFreqs.rbegin(), inputFreqs.rend());
  plant.memory.push_back(inputFreqs.size() >= 2 ? (double)inputFreqs[1] : 0.5);
  return {std::move(plant), std::move(merged)};
}

// Simple trimming at frequency R: every leaf with N_l < R is contracted
// against <k>^{-alpha} g_k^{zeta}, with one Gaussian field g keyed by
// (seed, k) shared across leaves, so trimming at R1 then R2 equals trimming
// at max(R1, R2) bit-exactly.  Contractions run in ascending
// (frequency, axis position) order to keep that composition exact.
inline PlantTensor trimSimple(const PlantTensor& in, long R, std::uint64_t seed,
                              double alpha) {
  requireDyadic(R, "trimming frequency");
  in.plant.validate();
  if (in.tensor.provenanceSeed != 0 && seed == in.tensor.provenanceSeed)
    throw std::invalid_argument("trimming seed must be independent of the tensor's seed");

  std::vector<std::pair<long, char>> toTrim;  // (freq, label), ascending
  for (int i = 0; i < in.tensor.rank(); ++i) {
    char l = in.tensor.axes[i].label;
    bool isLeaf = false;
    for (const auto& lf : in.plant.leaves) isLeaf |= (lf.label == l && !in.plant.isPaired(l));
    if (isLeaf && in.plant.leaf(l).freq < R) toTrim.push_back({in.plant.leaf(l).freq, l});
  }
  std::stable_sort(toTrim.begin(), toTrim.end(),
                   [](auto& a, auto& b) { return a.first < b.first; });

  LabeledTensor h = in.tensor;
  for (auto& [freq, label] : toTrim) {
    int ax = h.axisOf(label);
    int sign = h.axes[ax].sign;
    std::vector<cplx> w(h.axes[ax].box.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      KVec k = h.axes[ax].box.point(i);
      cplx g = complexGaussian(seed, kTrimTag, k);
      w[i] = std::pow(bracket(k), -alpha) * (sign > 0 ? g : std::conj(g));
    }
    h = detail::contractAxis(h, label, w);
  }
  // provenanceSeed still records the seed of the tensor's own Gaussian
  // content; re-trimming with the same contraction seed stays legal (the
  // composition law depends on it).

  SkeletonPlant plant = in.plant;
  std::set<char> trimmed;
  for (auto& [freq, label] : toTrim) trimmed.insert(label);
  std::erase_if(plant.leaves, [&](const PlantLeaf& l) { return trimmed.count(l.label) > 0; });
  return {std::move(plant), std::move(h)};
}

}  // namespace nlslab
