#include "trilat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <unordered_map>

#include "trilat/errors.hpp"
#include "trilat/objective.hpp"

namespace trilat {
namespace {

double sq(double x) { return x * x; }

struct Cell {
  double x0, y0;  // lower-left corner
  double value;   // objective at the center
  double lower;   // lower bound over the cell
};

struct Evaluator {
  const SensorConfig& c;
  double w, h;  // cell size
  double slack;

  // value at the center and a lower bound of O over [x0, x0 + w] x [y0, y0 + h]
  void eval(Cell& cell) const {
    double x1 = cell.x0 + w, y1 = cell.y0 + h;
    Point2 mid{cell.x0 + 0.5 * w, cell.y0 + 0.5 * h};
    cell.value = objective_value(c, mid);
    double lb = 0.0;
    int sign_sum = 0;
    Point2 weighted{0, 0};
    bool crossed = false;
    for (int j = 0; j < 3; ++j) {
      const Point2 z = c.z[j];
      double dx = std::max({0.0, cell.x0 - z.x, z.x - x1});
      double dy = std::max({0.0, cell.y0 - z.y, z.y - y1});
      double qmin = dx * dx + dy * dy;
      double qmax = sq(std::max(std::abs(cell.x0 - z.x), std::abs(x1 - z.x))) +
                    sq(std::max(std::abs(cell.y0 - z.y), std::abs(y1 - z.y)));
      double d2 = c.d[j] * c.d[j];
      if (d2 < qmin) {
        lb += qmin - d2;
        sign_sum += 1;
        weighted = weighted + z;
      } else if (d2 > qmax) {
        lb += d2 - qmax;
        sign_sum -= 1;
        weighted = weighted - z;
      } else {
        crossed = true;
      }
    }
    if (!crossed) {
      // O = a ||w - q||^2 + k on this cell exactly
      double a = sign_sum;
      Point2 q = weighted / a;
      double k = cell.value - a * norm2(mid - q);
      Point2 p;
      if (a > 0) {
        p = {std::clamp(q.x, cell.x0, x1), std::clamp(q.y, cell.y0, y1)};
      } else {
        p = {std::abs(cell.x0 - q.x) > std::abs(x1 - q.x) ? cell.x0 : x1,
             std::abs(cell.y0 - q.y) > std::abs(y1 - q.y) ? cell.y0 : y1};
      }
      lb = std::max(lb, a * norm2(p - q) + k);
    }
    cell.lower = lb - slack;
  }
};

template <class Fn>
void parallel_chunks(std::size_t n, int threads, Fn fn) {
  if (threads <= 1 || n < 4096) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t per = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::size_t b = t * per, e = std::min(n, b + per);
    if (b >= e) break;
    pool.emplace_back(fn, b, e, t);
  }
  for (auto& th : pool) th.join();
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void check_spec(const SensorConfig& c, const GridSpec& spec) {
  const Box& b = spec.bounds;
  if (spec.resolution < 2 || spec.refine_rounds < 0 || !(spec.refine_factor > 1))
    fail(ErrorKind::PreconditionViolation, "grid spec needs resolution >= 2 and refine_factor > 1");
  if (!finite(b.lo) || !finite(b.hi) || !(b.width() > 0) || !(b.height() > 0))
    fail(ErrorKind::BoundsTooSmall, "search box is empty");
  double margin = std::max({c.d[0], c.d[1], c.d[2]});
  double eps = 1e-12 * c.scale();
  for (int j = 0; j < 3; ++j) {
    double reach = c.d[j] + margin - eps;
    if (c.z[j].x - reach < b.lo.x || c.z[j].x + reach > b.hi.x || c.z[j].y - reach < b.lo.y ||
        c.z[j].y + reach > b.hi.y)
      fail(ErrorKind::BoundsTooSmall, "search box must contain every disk with margin max d");
  }
}

}  // namespace

int oracle_thread_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TRILAT_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

GridSpec default_grid_spec(const SensorConfig& c, int resolution, int refine_rounds) {
  c.validate();
  double margin = std::max({c.d[0], c.d[1], c.d[2]});
  Box b{{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()},
        {std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()}};
  for (int j = 0; j < 3; ++j) {
    b.lo.x = std::min(b.lo.x, c.z[j].x - c.d[j]);
    b.lo.y = std::min(b.lo.y, c.z[j].y - c.d[j]);
    b.hi.x = std::max(b.hi.x, c.z[j].x + c.d[j]);
    b.hi.y = std::max(b.hi.y, c.z[j].y + c.d[j]);
  }
  // a little extra keeps box edges off the disks and avoids a zero-area box
  double pad = margin + 0.05 * c.scale();
  b.lo = b.lo - Point2{pad, pad};
  b.hi = b.hi + Point2{pad, pad};
  return {b, resolution, refine_rounds, 4.0};
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

OracleResult brute_force_minimize(const SensorConfig& c, const GridSpec& spec, int threads) {
  c.validate();
  check_spec(c, spec);
  threads = oracle_thread_count(threads);
  const int k = std::max(2, static_cast<int>(std::lround(spec.refine_factor)));
  const double scale = c.scale();
  const double abs_floor = 1e-13 * scale * scale;
  const std::size_t cap = 4'000'000;

  double w = spec.bounds.width() / spec.resolution, h = spec.bounds.height() / spec.resolution;
  const double w0 = w;
  Evaluator ev{c, w, h, 1e-14 * scale * scale};

  std::vector<Cell> cells(static_cast<std::size_t>(spec.resolution) * spec.resolution);
  parallel_chunks(cells.size(), threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) {
      std::size_t row = i / spec.resolution, col = i % spec.resolution;
      cells[i] = {spec.bounds.lo.x + col * w, spec.bounds.lo.y + row * h, 0, 0};
      ev.eval(cells[i]);
    }
  });

  OracleResult out;
  double best = std::numeric_limits<double>::infinity();
  Point2 best_at;
  auto prune = [&](std::vector<Cell>& v, double rel) {
    for (const Cell& cell : v)
      if (cell.value < best) best = cell.value, best_at = {cell.x0 + 0.5 * w, cell.y0 + 0.5 * h};
    double band = best * rel + abs_floor;
    v.erase(std::remove_if(v.begin(), v.end(), [&](const Cell& cell) { return cell.lower > best + band; }),
            v.end());
    if (v.size() > cap) {
      std::nth_element(v.begin(), v.begin() + cap, v.end(),
                       [](const Cell& a, const Cell& b) { return a.lower < b.lower; });
      v.resize(cap);
    }
  };
  // the band shrinks with the squared cell size so smooth minima keep a bounded survivor count;
  // the lower bound is rigorous, so true co-minima never leave the set
  auto band_at = [&](double size) { return std::max(1e-12, 1e-3 * sq(size / w0)); };
  prune(cells, band_at(w));
  out.round_best.push_back(best);

  for (int round = 0; round < spec.refine_rounds; ++round) {
    double cw = w / k, ch = h / k;
    Evaluator child{c, cw, ch, ev.slack};
    // children are filtered against the previous minimum first (it only decreases), so
    // memory stays proportional to the survivors
    double keep_below = best + best * band_at(cw) + abs_floor;
    int parts = std::max(1, threads);
    std::vector<std::vector<Cell>> partial(parts);
    parallel_chunks(cells.size(), threads, [&](std::size_t b, std::size_t e, int t) {
      std::vector<Cell>& dst = partial[t];
      for (std::size_t i = b; i < e; ++i)
        for (int a = 0; a < k; ++a)
          for (int bb = 0; bb < k; ++bb) {
            Cell cell{cells[i].x0 + a * cw, cells[i].y0 + bb * ch, 0, 0};
            child.eval(cell);
            if (cell.lower <= keep_below || cell.value < best) dst.push_back(cell);
          }
    });
    std::vector<Cell> next;
    for (auto& part : partial) next.insert(next.end(), part.begin(), part.end());
    w = cw;
    h = ch;
    cells.swap(next);
    prune(cells, band_at(w));
    out.round_best.push_back(best);
  }

  // cluster survivors
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.x0 < b.x0 || (a.x0 == b.x0 && a.y0 < b.y0);
  });
  double diag = std::hypot(w, h);
  out.cluster_radius = 2 * diag;
  out.survivors = cells.size();
  UnionFind uf(cells.size());
  std::unordered_map<long long, std::vector<std::size_t>> buckets;
  auto key = [&](long long bx, long long by) { return bx * 73856093LL ^ by * 19349663LL; };
  std::vector<std::pair<long long, long long>> coords(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    long long bx = static_cast<long long>(std::floor((cells[i].x0 - spec.bounds.lo.x) / out.cluster_radius));
    long long by = static_cast<long long>(std::floor((cells[i].y0 - spec.bounds.lo.y) / out.cluster_radius));
    coords[i] = {bx, by};
    buckets[key(bx, by)].push_back(i);
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find(key(coords[i].first + dx, coords[i].second + dy));
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second)
          if (j > i && std::hypot(cells[i].x0 - cells[j].x0, cells[i].y0 - cells[j].y0) <= out.cluster_radius)
            uf.unite(i, j);
      }

  std::vector<std::size_t> rep_of(cells.size(), SIZE_MAX);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::size_t root = uf.find(i);
    if (rep_of[root] == SIZE_MAX) {
      rep_of[root] = i;
      reps.push_back(root);
    } else if (cells[i].value < cells[rep_of[root]].value) {
      rep_of[root] = i;
    }
  }

  std::vector<OracleMinimum> found;
  // golden-section line searches along both axes and along any measurement circle through the
  // point (minima sit on kink curves, where axis moves alone zigzag); the bracket grows while
  // the point keeps travelling
  const double max_step = 0.05 * scale;
  auto polish = [&](Point2 p, double v) {
    double step = diag;
    auto accept = [&](Point2 q) {
      double vq = objective_value(c, q);
      if (vq < v) p = q, v = vq;
    };
    for (int sweep = 0; sweep < 400; ++sweep) {
      double before = v;
      Point2 start = p;
      accept({golden_section_minimize([&](double t) { return objective_value(c, {t, p.y}); }, p.x - step,
                                      p.x + step, 50),
              p.y});
      accept({p.x, golden_section_minimize([&](double t) { return objective_value(c, {p.x, t}); }, p.y - step,
                                           p.y + step, 50)});
      for (int j = 0; j < 3; ++j) {
        Point2 off = p - c.z[j];
        double rho = norm(off);
        if (c.d[j] <= 0 || rho == 0 || std::fabs(rho - c.d[j]) > step) continue;
        double theta = std::atan2(off.y, off.x), span = std::min(M_PI, step / c.d[j]);
        auto on_circle = [&](double a) { return c.z[j] + Point2{c.d[j] * std::cos(a), c.d[j] * std::sin(a)}; };
        accept(on_circle(golden_section_minimize([&](double a) { return objective_value(c, on_circle(a)); },
                                                 theta - span, theta + span, 60)));
      }
      if (v < before - 1e-15 * (1 + before)) {
        if (distance(p, start) > 0.5 * step) step = std::min(2 * step, max_step);
      } else if (step > diag) {
        step = std::max(diag, step / 4);
      } else {
        break;
      }
    }
    found.push_back({p, v});
  };
  for (std::size_t root : reps) {
    const Cell& cell = cells[rep_of[root]];
    polish({cell.x0 + 0.5 * w, cell.y0 + 0.5 * h}, cell.value);
  }
  // the running minimum may come from a coarser center that no surviving cell contains
  polish(best_at, best);
  std::sort(found.begin(), found.end(), [](const OracleMinimum& a, const OracleMinimum& b) {
    return a.value < b.value || (a.value == b.value && (a.point.x < b.point.x || (a.point.x == b.point.x && a.point.y < b.point.y)));
  });
  for (const OracleMinimum& m : found) {
    bool close = false;
    for (const OracleMinimum& q : out.minima)
      if (distance(q.point, m.point) <= out.cluster_radius) close = true;
    if (!close) out.minima.push_back(m);
  }
  out.global_value = out.minima.front().value;
  std::vector<OracleMinimum> kept;
  for (const OracleMinimum& m : out.minima)
    if (m.value <= out.global_value * (1 + 1e-6) + abs_floor) kept.push_back(m);
  out.minima = kept;
  std::sort(out.minima.begin(), out.minima.end(), [](const OracleMinimum& a, const OracleMinimum& b) {
    return a.point.x < b.point.x || (a.point.x == b.point.x && a.point.y < b.point.y);
  });
  return out;
}

SensorConfig generate_instance(Point2 source, const std::array<Point2, 3>& z,
                               const std::function<double()>& draw) {
  if (!finite(source)) fail(ErrorKind::PreconditionViolation, "non-finite source");
  SensorConfig c;
  c.z = z;
  for (int i = 0; i < 3; ++i) {
    double exact = distance(source, z[i]);
    int attempt = 0;
    for (;; ++attempt) {
      if (attempt == 100) fail(ErrorKind::NoiseRejection, "range " + std::to_string(i + 1) + " stayed negative");
      double d = exact + draw();
      if (d >= 0) {
        c.d[i] = d;
        break;
      }
    }
  }
  c.validate();
  return c;
}

SensorConfig generate_instance(Point2 source, const std::array<Point2, 3>& z, const NoiseSpec& noise,
                               std::uint64_t seed) {
  if (!std::isfinite(noise.amplitude) || noise.amplitude < 0)
    fail(ErrorKind::PreconditionViolation, "noise amplitude must be finite and >= 0");
  if (noise.kind == NoiseKind::None || noise.amplitude == 0) return generate_instance(source, z, [] { return 0.0; });
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-noise.amplitude, noise.amplitude);
  std::normal_distribution<double> normal(0.0, noise.amplitude);
  if (noise.kind == NoiseKind::Uniform) return generate_instance(source, z, [&] { return uniform(rng); });
  return generate_instance(source, z, [&] { return normal(rng); });
}

std::array<ObjectiveTableEntry, 6> objective_table(const SensorConfig& c, double tie_tol) {
  c.validate();
  static const char* labels[6] = {"S12+", "S12-", "S23+", "S23-", "S31+", "S31-"};
  static const char* names[3] = {"12", "23", "31"};
  const int pairs[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  std::array<ObjectiveTableEntry, 6> out{};
  for (int p = 0; p < 3; ++p) {
    IntersectionPair ip;
    try {
      ip = circle_circle_intersect(c.circle(pairs[p][0]), c.circle(pairs[p][1]), c.z[pairs[p][2]]);
    } catch (const Error&) {
      fail(ErrorKind::MissingIntersection, std::string("circles ") + names[p] + " coincide");
    }
    if (ip.count == 0) fail(ErrorKind::MissingIntersection, std::string("circles ") + names[p] + " do not meet");
    out[2 * p] = {labels[2 * p], ip.plus, objective_value(c, ip.plus), false};
    out[2 * p + 1] = {labels[2 * p + 1], ip.minus, objective_value(c, ip.minus), false};
  }
  double best = out[0].value;
  for (const auto& e : out) best = std::min(best, e.value);
  for (auto& e : out) e.minimal = e.value <= best + tie_tol * std::max(best, 1e-300);
  return out;
}

std::vector<ContourSample> contour_grid(const SensorConfig& c, int resolution, double margin) {
  c.validate();
  if (resolution < 2) fail(ErrorKind::PreconditionViolation, "contour resolution must be at least 2");
  Point2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Point2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (int j = 0; j < 3; ++j) {
    lo = {std::min(lo.x, c.z[j].x - c.d[j]), std::min(lo.y, c.z[j].y - c.d[j])};
    hi = {std::max(hi.x, c.z[j].x + c.d[j]), std::max(hi.y, c.z[j].y + c.d[j])};
  }
  Point2 pad{margin * (hi.x - lo.x), margin * (hi.y - lo.y)};
  lo = lo - pad;
  hi = hi + pad;
  std::vector<ContourSample> out(static_cast<std::size_t>(resolution) * resolution);
  parallel_chunks(out.size(), oracle_thread_count(), [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) {
      std::size_t row = i / resolution, col = i % resolution;
      double x = lo.x + (hi.x - lo.x) * col / (resolution - 1);
      double y = lo.y + (hi.y - lo.y) * row / (resolution - 1);
      out[i] = {x, y, objective_value(c, {x, y})};
    }
  });
  return out;
}

RegionTopology grid_region_topology(const SensorConfig& c, int resolution, double margin, int min_pixels) {
  c.validate();
  Point2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Point2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (int j = 0; j < 3; ++j) {
    lo = {std::min(lo.x, c.z[j].x - c.d[j]), std::min(lo.y, c.z[j].y - c.d[j])};
    hi = {std::max(hi.x, c.z[j].x + c.d[j]), std::max(hi.y, c.z[j].y + c.d[j])};
  }
  Point2 pad{margin * (hi.x - lo.x) + 1e-9, margin * (hi.y - lo.y) + 1e-9};
  lo = lo - pad;
  hi = hi + pad;
  const std::size_t n = resolution;
  std::vector<std::uint8_t> label(n * n);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t col = 0; col < n; ++col) {
      Point2 p{lo.x + (hi.x - lo.x) * (col + 0.5) / n, lo.y + (hi.y - lo.y) * (row + 0.5) / n};
      label[row * n + col] = classify_point(c, p).bits;
    }
  UnionFind uf(n * n);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t i = row * n + col;
      // 8-neighbourhood: regions touching at a point count as connected
      if (col + 1 < n && label[i] == label[i + 1]) uf.unite(i, i + 1);
      if (row + 1 < n && label[i] == label[i + n]) uf.unite(i, i + n);
      if (row + 1 < n && col + 1 < n && label[i] == label[i + n + 1]) uf.unite(i, i + n + 1);
      if (row + 1 < n && col > 0 && label[i] == label[i + n - 1]) uf.unite(i, i + n - 1);
    }
  std::vector<int> size(n * n, 0);
  for (std::size_t i = 0; i < n * n; ++i) ++size[uf.find(i)];
  RegionTopology topo;
  for (std::size_t i = 0; i < n * n; ++i)
    if (uf.find(i) == i && size[i] >= min_pixels) {
      LabelTopology& t = topo.labels[label[i]];
      t.nonempty = true;
      ++t.components;
      t.connected = t.components == 1;
    }
  return topo;
}

}  // namespace trilat
