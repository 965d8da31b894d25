#include "stclust/hac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stclust/simd.hpp"

namespace stclust {

SimilarityMatrix::SimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {
  for (std::size_t i = 0; i < n; ++i) values_[i * n + i] = 1.0;
}

void SimilarityMatrix::set(std::size_t a, std::size_t b, double v) {
  values_[a * n_ + b] = v;
  values_[b * n_ + a] = v;
}

void SimilarityMatrix::validate() const {
  for (std::size_t a = 0; a < n_; ++a) {
    if ((*this)(a, a) != 1.0)
      throw std::invalid_argument("similarity matrix: diagonal entry " + std::to_string(a) +
                                  " is not 1");
    for (std::size_t b = a + 1; b < n_; ++b) {
      const double v = (*this)(a, b);
      if (v != (*this)(b, a))
        throw std::invalid_argument("similarity matrix: asymmetric at (" + std::to_string(a) +
                                    ", " + std::to_string(b) + ")");
      if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw std::invalid_argument("similarity matrix: value out of [0, 1] at (" +
                                    std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  }
}

Dendrogram upgma(const SimilarityMatrix& matrix) {
  matrix.validate();
  const std::size_t n = matrix.size();
  if (n == 0) throw std::invalid_argument("upgma: empty similarity matrix");

  constexpr double kDead = -std::numeric_limits<double>::infinity();
  // Working linkage matrix indexed by slot; a cluster lives in the slot of its
  // smallest item.
  std::vector<double> w(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = matrix.row(i);
    std::copy(r.begin(), r.end(), w.begin() + static_cast<std::ptrdiff_t>(i * n));
    w[i * n + i] = kDead;
  }
  auto row = [&](std::size_t i) { return std::span<double>(w).subspan(i * n, n); };

  std::vector<bool> active(n, true);
  std::vector<std::size_t> size(n, 1);
  std::vector<std::size_t> node(n);
  std::iota(node.begin(), node.end(), std::size_t{0});

  // best[i]: most similar slot j > i.
  std::vector<simd::ArgMax> best(n, simd::ArgMax{n, kDead});
  auto rescan = [&](std::size_t i) {
    if (i + 1 >= n) {
      best[i] = {n, kDead};
      return;
    }
    auto r = simd::argmax(row(i).subspan(i + 1));
    best[i] = {r.index + i + 1, r.value};
  };
  for (std::size_t i = 0; i < n; ++i) rescan(i);

  Dendrogram d;
  d.num_items = n;
  d.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t lo = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || best[i].index >= n) continue;
      if (lo == n || best[i].value > best[lo].value) lo = i;
    }
    const std::size_t hi = best[lo].index;
    const double link = best[lo].value;

    d.merges.push_back({node[lo], node[hi], link, size[lo] + size[hi]});

    auto rlo = row(lo);
    simd::weighted_average(rlo, rlo, row(hi), static_cast<double>(size[lo]),
                           static_cast<double>(size[hi]));
    rlo[lo] = kDead;
    rlo[hi] = kDead;
    std::fill(row(hi).begin(), row(hi).end(), kDead);
    for (std::size_t i = 0; i < n; ++i) {
      w[i * n + lo] = rlo[i];
      w[i * n + hi] = kDead;
    }
    active[hi] = false;
    best[hi] = {n, kDead};
    size[lo] += size[hi];
    node[lo] = n + step;

    rescan(lo);
    for (std::size_t i = 0; i < lo; ++i) {
      if (!active[i]) continue;
      if (best[i].index == lo || best[i].index == hi) {
        rescan(i);
        continue;
      }
      const double v = w[i * n + lo];
      if (v > best[i].value || (v == best[i].value && lo < best[i].index)) best[i] = {lo, v};
    }
    for (std::size_t i = lo + 1; i < hi; ++i)
      if (active[i] && best[i].index == hi) rescan(i);
  }
  return d;
}

namespace {

// Replays merges with a union-find over cluster ids, calling emit(partition)
// after `first_emit` merges and after every later merge.
template <typename Emit>
void replay(const Dendrogram& d, std::size_t merges_before_first, std::size_t last, Emit&& emit) {
  const std::size_t n = d.num_items;
  std::vector<std::vector<std::size_t>> members(n + d.merges.size());
  std::vector<bool> alive(n + d.merges.size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    alive[i] = true;
  }
  auto snapshot = [&] {
    FlatClustering out;
    for (std::size_t c = 0; c < members.size(); ++c)
      if (alive[c]) out.push_back(members[c]);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    emit(std::move(out));
  };
  for (std::size_t t = 0; t <= last; ++t) {
    if (t >= merges_before_first) snapshot();
    if (t == last) break;
    const Merge& m = d.merges[t];
    auto& dst = members[n + t];
    dst.reserve(m.size);
    std::merge(members[m.left].begin(), members[m.left].end(), members[m.right].begin(),
               members[m.right].end(), std::back_inserter(dst));
    alive[m.left] = alive[m.right] = false;
    members[m.left].clear();
    members[m.right].clear();
    alive[n + t] = true;
  }
}

}  // namespace

FlatClustering cut(const Dendrogram& d, std::size_t k) {
  const std::size_t n = d.num_items;
  if (k < 1 || k > n)
    throw std::out_of_range("cut: K=" + std::to_string(k) + " outside [1, " + std::to_string(n) +
                            "]");
  if (d.merges.size() + 1 != n) throw std::invalid_argument("cut: incomplete dendrogram");
  FlatClustering result;
  replay(d, n - k, n - k, [&](FlatClustering c) { result = std::move(c); });
  return result;
}

std::vector<FlatClustering> all_levels(const Dendrogram& d) {
  std::vector<FlatClustering> out;
  if (d.num_items == 0) return out;
  if (d.merges.size() + 1 != d.num_items) throw std::invalid_argument("all_levels: incomplete dendrogram");
  out.reserve(d.num_items);
  replay(d, 0, d.merges.size(), [&](FlatClustering c) { out.push_back(std::move(c)); });
  return out;
}

}  // namespace stclust
