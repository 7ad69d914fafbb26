#include "lemni/raster.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "lemni/components.hpp"
#include "lemni/errors.hpp"

namespace lemni {

namespace {

// Roots per product block; 8 factors of |z - x|^2 cannot leave double range
// unless z is within ~1e-19 of a root, where 0 (inside) is the right answer.
constexpr std::size_t kBlock = 8;

// True when the plain product of |z - x|^2 over all roots stays below the
// overflow threshold for every z in the square; underflow reads as inside,
// which is then correct.
bool product_fits(const RootedPolynomial& poly, double bound) {
  const double corner = bound * std::sqrt(2.0);
  double log_max = 0.0;
  for (const cplx& x : poly.roots()) log_max += 2.0 * std::log(corner + std::abs(x));
  return log_max < 700.0;
}

void rasterize_rows(const RootedPolynomial& poly, RasterGrid& grid, int row_begin, int row_end) {
  const int res = grid.resolution;
  const double h = grid.pixel_size();
  const auto& roots = poly.roots();
  const std::size_t n = roots.size();
  std::vector<double> xs(res), block(res), mant(res);
  std::vector<int> expo(res);
  for (int j = 0; j < res; ++j) xs[j] = -grid.bound + (j + 0.5) * h;
  const bool direct = n <= kBlock || product_fits(poly, grid.bound);

  for (int i = row_begin; i < row_end; ++i) {
    const double y = grid.bound - (i + 0.5) * h;
    std::uint8_t* out = grid.inside.data() + grid.index(i, 0);
    if (direct) {
      std::fill(block.begin(), block.end(), 1.0);
      for (const cplx& x : roots) {
        const double xr = x.real();
        const double dy = y - x.imag();
        const double dy2 = dy * dy;
        for (int j = 0; j < res; ++j) {
          const double dx = xs[j] - xr;
          block[j] *= dx * dx + dy2;
        }
      }
      for (int j = 0; j < res; ++j) out[j] = block[j] < 1.0;
      continue;
    }
    std::fill(mant.begin(), mant.end(), 1.0);
    std::fill(expo.begin(), expo.end(), 0);
    for (std::size_t k0 = 0; k0 < n; k0 += kBlock) {
      std::fill(block.begin(), block.end(), 1.0);
      const std::size_t k1 = std::min(n, k0 + kBlock);
      for (std::size_t k = k0; k < k1; ++k) {
        const double xr = roots[k].real();
        const double dy = y - roots[k].imag();
        const double dy2 = dy * dy;
        for (int j = 0; j < res; ++j) {
          const double dx = xs[j] - xr;
          block[j] *= dx * dx + dy2;
        }
      }
      for (int j = 0; j < res; ++j) {
        int e = 0;
        mant[j] = std::frexp(mant[j] * block[j], &e);
        expo[j] += e;
      }
    }
    // mant in [0.5, 1) or 0: the value m 2^e is below 1 iff e <= 0.
    for (int j = 0; j < res; ++j) out[j] = mant[j] == 0.0 || expo[j] <= 0;
  }
}

}  // namespace

cplx RasterGrid::center(int i, int j) const {
  const double h = pixel_size();
  return {-bound + (j + 0.5) * h, bound - (i + 0.5) * h};
}

std::pair<int, int> RasterGrid::pixel_of(cplx z) const {
  const double h = pixel_size();
  const int j = static_cast<int>(std::floor((z.real() + bound) / h));
  const int i = static_cast<int>(std::floor((bound - z.imag()) / h));
  return {std::clamp(i, 0, resolution - 1), std::clamp(j, 0, resolution - 1)};
}

std::int64_t RasterGrid::inside_count() const {
  std::int64_t c = 0;
  for (std::uint8_t v : inside) c += v;
  return c;
}

std::size_t raster_bytes(int resolution) {
  const std::size_t px = static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
  return px * (sizeof(std::uint8_t) + sizeof(std::uint32_t));
}

RasterGrid rasterize(const RootedPolynomial& poly, int resolution, double bound,
                     std::size_t memory_cap, int threads) {
  if (resolution < 64) throw ConfigError("raster: resolution must be >= 64");
  if (!(bound > 1.0)) throw ConfigError("raster: bound must be > 1");
  if (raster_bytes(resolution) > memory_cap)
    throw ResourceError("raster: resolution " + std::to_string(resolution) + " needs " +
                        std::to_string(raster_bytes(resolution)) + " bytes, cap is " +
                        std::to_string(memory_cap));
  RasterGrid grid;
  grid.resolution = resolution;
  grid.bound = bound;
  grid.inside.assign(static_cast<std::size_t>(resolution) * resolution, 0);

  threads = std::clamp(threads, 1, resolution);
  if (threads == 1) {
    rasterize_rows(poly, grid, 0, resolution);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      const int r0 = static_cast<int>(static_cast<long long>(resolution) * t / threads);
      const int r1 = static_cast<int>(static_cast<long long>(resolution) * (t + 1) / threads);
      pool.emplace_back(rasterize_rows, std::cref(poly), std::ref(grid), r0, r1);
    }
    for (auto& th : pool) th.join();
  }
  // A pixel holding a root meets the lemniscate even when its center misses
  // a sub-pixel component.
  for (const cplx& x : poly.roots()) {
    if (std::abs(x.real()) >= bound || std::abs(x.imag()) >= bound) continue;
    const auto [i, j] = grid.pixel_of(x);
    grid.inside[grid.index(i, j)] = 1;
  }
  return grid;
}

int flood_count(RasterGrid& grid) {
  // Runs of inside pixels per row, joined by union-find where runs in
  // adjacent rows share a column. Labels follow the raster order of each
  // component's first pixel.
  struct Run {
    int row, begin, end;
  };
  const int res = grid.resolution;
  std::vector<Run> runs;
  std::vector<std::uint32_t> parent;
  auto find = [&](std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::size_t prev_begin = 0, prev_end = 0;
  for (int i = 0; i < res; ++i) {
    const std::uint8_t* row = grid.inside.data() + grid.index(i, 0);
    const std::size_t cur_begin = runs.size();
    std::size_t k = prev_begin;
    for (int j = 0; j < res;) {
      if (!row[j]) {
        ++j;
        continue;
      }
      const int b = j;
      while (j < res && row[j]) ++j;
      const auto id = static_cast<std::uint32_t>(runs.size());
      runs.push_back({i, b, j});
      parent.push_back(id);
      while (k < prev_end && runs[k].end <= b) ++k;
      for (std::size_t q = k; q < prev_end && runs[q].begin < j; ++q) {
        const std::uint32_t ra = find(id), rb = find(static_cast<std::uint32_t>(q));
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
    prev_begin = cur_begin;
    prev_end = runs.size();
  }
  grid.labels.assign(grid.inside.size(), 0);
  std::vector<std::uint32_t> label_of(runs.size(), 0);
  std::uint32_t next = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const std::uint32_t root = find(static_cast<std::uint32_t>(r));
    if (!label_of[root]) label_of[root] = ++next;
    std::uint32_t* out = grid.labels.data() + grid.index(runs[r].row, 0);
    std::fill(out + runs[r].begin, out + runs[r].end, label_of[root]);
  }
  grid.label_count = static_cast<int>(next);
  return grid.label_count;
}

std::vector<ComponentExtent> component_extents(const RasterGrid& grid) {
  if (grid.labels.size() != grid.inside.size())
    throw std::invalid_argument("component_extents: grid is not labeled");
  std::vector<ComponentExtent> ext(static_cast<std::size_t>(grid.label_count));
  for (std::size_t k = 0; k < ext.size(); ++k) {
    ext[k].label = static_cast<std::uint32_t>(k + 1);
    ext[k].min_i = ext[k].min_j = grid.resolution;
    ext[k].max_i = ext[k].max_j = -1;
  }
  for (int i = 0; i < grid.resolution; ++i) {
    for (int j = 0; j < grid.resolution; ++j) {
      const std::uint32_t l = grid.labels[grid.index(i, j)];
      if (!l) continue;
      ComponentExtent& e = ext[l - 1];
      e.min_i = std::min(e.min_i, i);
      e.max_i = std::max(e.max_i, i);
      e.min_j = std::min(e.min_j, j);
      e.max_j = std::max(e.max_j, j);
      ++e.pixels;
    }
  }
  return ext;
}

bool raster_ambiguous(const RasterGrid& grid, const RootedPolynomial& poly, double min_pixels) {
  for (const auto& e : component_extents(grid))
    if (e.diameter_px() < min_pixels) return true;
  const double h = grid.pixel_size();
  for (std::size_t k = 0; k < poly.degree(); ++k) {
    // Near an isolated root P(z) ~ Q_k(x_k)(z - x_k).
    const double log_diameter = std::log(2.0) - log_abs_q(poly, poly.root(k), k);
    if (log_diameter < std::log(min_pixels * h)) return true;
  }
  return false;
}

std::string ppm_header(int resolution) {
  return "P6\n" + std::to_string(resolution) + " " + std::to_string(resolution) + "\n255\n";
}

void write_ppm(const RasterGrid& grid, const RootedPolynomial& poly, double kappa,
               const std::string& path) {
  const double inner = annulus_inner_radius(poly.degree(), kappa);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << ppm_header(grid.resolution);
  std::vector<unsigned char> row(static_cast<std::size_t>(grid.resolution) * 3);
  for (int i = 0; i < grid.resolution; ++i) {
    for (int j = 0; j < grid.resolution; ++j) {
      const cplx z = grid.center(i, j);
      const double r = std::abs(z);
      const bool in = grid.inside[grid.index(i, j)];
      unsigned char rgb[3];
      if (r >= 1.0) {
        if (in) { rgb[0] = 150; rgb[1] = 230; rgb[2] = 150; }
        else { rgb[0] = 255; rgb[1] = 255; rgb[2] = 255; }
      } else if (!in) {
        rgb[0] = 220; rgb[1] = 40; rgb[2] = 40;
      } else if (r <= inner) {
        rgb[0] = 240; rgb[1] = 220; rgb[2] = 60;
      } else {
        rgb[0] = 0; rgb[1] = 200; rgb[2] = 0;
      }
      std::copy(rgb, rgb + 3, row.begin() + 3 * j);
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace lemni
