#include "clear/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "clear/error.hpp"

namespace clear {

namespace {

template <typename T>
void require_same_shape(const Grid<T>& a, const Grid<T>& b, const char* what) {
  if (!a.same_shape(b)) {
    std::ostringstream msg;
    msg << what << ": shape mismatch (" << a.width() << "x" << a.height() << " vs " << b.width()
        << "x" << b.height() << ")";
    throw DataError(msg.str());
  }
}

// Class histogram over the union of ids in both maps, returned as two aligned vectors.
std::pair<std::vector<double>, std::vector<double>> aligned_histograms(const Grid<int>& a,
                                                                       const Grid<int>& b) {
  std::map<int, std::pair<double, double>> counts;
  for (int v : a.values()) counts[v].first += 1.0;
  for (int v : b.values()) counts[v].second += 1.0;
  std::vector<double> p, q;
  for (const auto& [id, c] : counts) {
    p.push_back(c.first);
    q.push_back(c.second);
  }
  return {p, q};
}

}  // namespace

Reconstruction rasterize(std::span<const Region> regions, int width, int height,
                         double cell_size) {
  if (regions.empty()) throw DataError("cannot rasterize an empty region set");
  Reconstruction rec = kernels::omp::rasterize(regions, width, height, cell_size);
  if (rec.gap_fraction > 1e-3) {
    std::ostringstream msg;
    msg << "regions leave " << rec.gap_fraction * 100.0
        << "% of pixels uncovered (at most 0.1% allowed)";
    throw DataError(msg.str());
  }
  return rec;
}

double rmse(const Grid<double>& truth, const Grid<double>& estimate) {
  require_same_shape(truth, estimate, "rmse");
  const auto t = truth.values();
  const auto e = estimate.values();
  if (t.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = t[i] - e[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(t.size()));
}

IouResult miou(const Grid<int>& truth, const Grid<int>& estimate) {
  require_same_shape(truth, estimate, "miou");
  std::map<int, std::size_t> inter, truth_count, est_count;
  const auto t = truth.values();
  const auto e = estimate.values();
  for (std::size_t i = 0; i < t.size(); ++i) {
    ++truth_count[t[i]];
    ++est_count[e[i]];
    if (t[i] == e[i]) ++inter[t[i]];
  }
  IouResult out;
  if (truth_count.empty()) return out;
  double sum = 0.0;
  for (const auto& [cls, tc] : truth_count) {
    const std::size_t i = inter.count(cls) ? inter[cls] : 0;
    const std::size_t ec = est_count.count(cls) ? est_count[cls] : 0;
    const double iou = static_cast<double>(i) / static_cast<double>(tc + ec - i);
    out.per_class[cls] = iou;
    sum += iou;
  }
  out.miou = sum / static_cast<double>(truth_count.size());
  return out;
}

double jsd(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DataError("jsd: distributions of different length");
  double sp = 0.0, sq = 0.0;
  for (double v : p) sp += v;
  for (double v : q) sq += v;
  if (sp <= 0.0 || sq <= 0.0) throw DataError("jsd: empty distribution");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i] / sp, qi = q[i] / sq;
    const double m = 0.5 * (pi + qi);
    if (pi > 0.0) total += 0.5 * pi * std::log2(pi / m);
    if (qi > 0.0) total += 0.5 * qi * std::log2(qi / m);
  }
  return std::clamp(total, 0.0, 1.0);
}

double jsd_retention(const Grid<int>& truth, const Grid<int>& estimate) {
  require_same_shape(truth, estimate, "jsd_retention");
  if (truth.values().empty()) return 1.0;
  const auto [p, q] = aligned_histograms(truth, estimate);
  return 1.0 - jsd(p, q);
}

ComplexityParts complexity_parts(const TerrainTile& tile, double alpha, int k) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("complexity alpha must lie in [0, 1]");
  if (k < 3 || k % 2 == 0) throw ConfigError("complexity window k must be odd and >= 3");
  ComplexityParts out;

  std::vector<double> p(tile.classes.size(), 0.0), u(tile.classes.size(), 1.0);
  std::map<int, std::size_t> slot;
  for (std::size_t i = 0; i < tile.classes.size(); ++i) slot[tile.classes.classes()[i].id] = i;
  for (int v : tile.landcover.values()) {
    const auto it = slot.find(v);
    if (it == slot.end()) throw DataError("landcover id " + std::to_string(v) + " not in legend");
    p[it->second] += 1.0;
  }
  out.jsd_norm = p.empty() ? 0.0 : std::sqrt(jsd(p, u));

  const int half = k / 2;
  const double denom = static_cast<double>(k * k - 1);
  double sum = 0.0;
  for (int r = 0; r < tile.height; ++r) {
    for (int c = 0; c < tile.width; ++c) {
      const int centre = tile.landcover(r, c);
      int differing = 0;
      for (int dr = -half; dr <= half; ++dr) {
        const int rr = r + dr;
        if (rr < 0 || rr >= tile.height) continue;
        for (int dc = -half; dc <= half; ++dc) {
          const int cc = c + dc;
          if (cc < 0 || cc >= tile.width || (dr == 0 && dc == 0)) continue;
          if (tile.landcover(rr, cc) != centre) ++differing;
        }
      }
      sum += differing / denom;
    }
  }
  const double pixels = static_cast<double>(tile.width) * tile.height;
  out.heterogeneity = pixels > 0 ? sum / pixels : 0.0;
  out.psi = alpha * out.jsd_norm + (1.0 - alpha) * out.heterogeneity;
  return out;
}

double complexity_psi(const TerrainTile& tile, double alpha, int k) {
  return complexity_parts(tile, alpha, k).psi;
}

double polygon_iou(std::span<const Vec2> a, std::span<const Vec2> b) {
  const double aa = area(a), ab = area(b);
  if (aa <= 0.0 || ab <= 0.0) return 0.0;
  if (std::equal(a.begin(), a.end(), b.begin(), b.end())) return 1.0;  // clipping would round
  const Ring inter = intersect_convex(a, b);
  const double ai = inter.size() >= 3 ? area(inter) : 0.0;
  const double uni = aa + ab - ai;
  return uni > 0.0 ? std::clamp(ai / uni, 0.0, 1.0) : 0.0;
}

RepeatResult repeatability(std::span<const Ring> a, std::span<const Ring> b,
                           const RepeatFrame& f, double iou_threshold) {
  const int r0 = std::max(0, f.row), r1 = std::min(f.height_a, f.row + f.height_b);
  const int c0 = std::max(0, f.col), c1 = std::min(f.width_a, f.col + f.width_b);
  if (r1 <= r0 || c1 <= c0) throw DataError("repeatability: patches do not overlap");
  const double cs = f.cell_size;
  const Ring window = rectangle(c0 * cs, r0 * cs, c1 * cs, r1 * cs);
  const double min_area = 1e-9 * cs * cs;

  auto clip_all = [&](std::span<const Ring> rings, Vec2 shift) {
    std::vector<Ring> out;
    for (const Ring& ring : rings) {
      Ring moved = ring;
      for (auto& v : moved) v = v + shift;
      Ring clipped = intersect_convex(moved, window);
      if (clipped.size() >= 3 && area(clipped) > min_area) out.push_back(std::move(clipped));
    }
    return out;
  };
  const std::vector<Ring> ca = clip_all(a, {0.0, 0.0});
  const std::vector<Ring> cb = clip_all(b, {f.col * cs, f.row * cs});
  std::vector<Box> boxes_b;
  boxes_b.reserve(cb.size());
  for (const auto& ring : cb) boxes_b.push_back(bounding_box(ring));

  RepeatResult res;
  res.compared = ca.size();
  if (ca.empty()) return res;
  double sum = 0.0;
  std::size_t hits = 0;
  for (const auto& ring : ca) {
    const Box box = bounding_box(ring);
    double best = 0.0;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (!box.overlaps(boxes_b[j])) continue;
      best = std::max(best, polygon_iou(ring, cb[j]));
    }
    sum += best;
    if (best >= iou_threshold) ++hits;
  }
  res.mean_best_iou = sum / static_cast<double>(ca.size());
  res.repeat_ratio = static_cast<double>(hits) / static_cast<double>(ca.size());
  return res;
}

EvalReport evaluate(const TerrainTile& tile, std::span<const Region> regions,
                    double abstraction_time_s) {
  const Reconstruction rec = rasterize(regions, tile.width, tile.height, tile.cell_size);
  EvalReport report;
  report.rmse_m = rmse(tile.elevation, rec.elevation);
  const IouResult iou = miou(tile.landcover, rec.landcover);
  report.miou = iou.miou;
  report.per_class_iou = iou.per_class;
  report.jsd_retention = jsd_retention(tile.landcover, rec.landcover);
  report.complexity_psi = complexity_psi(tile);
  report.region_count = static_cast<int>(regions.size());
  report.abstraction_time_s = abstraction_time_s;
  return report;
}

}  // namespace clear
