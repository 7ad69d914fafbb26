#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lemni/polyeval.hpp"

namespace lemni {

/// Pixel mask of {log|P| < 0} on the square [-b, b]^2.
///
/// Pixel (i, j) has center x = -b + (j + 1/2) h, y = b - (i + 1/2) h with
/// h = 2b / resolution, so row 0 is the top of the image. Storage is
/// row-major. labels is empty until flood_count runs; afterwards every
/// inside pixel carries a label in 1..label_count and outside pixels 0.
struct RasterGrid {
  int resolution = 0;
  double bound = 0.0;
  std::vector<std::uint8_t> inside;
  std::vector<std::uint32_t> labels;
  int label_count = 0;

  double pixel_size() const { return 2.0 * bound / resolution; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(resolution) +
           static_cast<std::size_t>(j);
  }
  cplx center(int i, int j) const;
  /// Pixel containing z (clamped to the grid).
  std::pair<int, int> pixel_of(cplx z) const;
  std::int64_t inside_count() const;
};

inline constexpr std::size_t kDefaultRasterMemoryCap = std::size_t{2} << 30;

/// Bytes a labeled grid of this resolution needs.
std::size_t raster_bytes(int resolution);

/// Fills the inside mask: a pixel is inside when log|P| < 0 at its center or
/// when it contains a root. Throws ConfigError if resolution < 64 or
/// bound <= 1, ResourceError if raster_bytes(resolution) > memory_cap.
/// `threads` > 1 splits rows across threads; the result does not depend on it.
RasterGrid rasterize(const RootedPolynomial& poly, int resolution, double bound = 1.25,
                     std::size_t memory_cap = kDefaultRasterMemoryCap, int threads = 1);

/// Labels 4-connected components of inside pixels and returns their number.
int flood_count(RasterGrid& grid);

struct ComponentExtent {
  std::uint32_t label = 0;
  int min_i = 0, max_i = 0, min_j = 0, max_j = 0;
  std::int64_t pixels = 0;

  /// Larger side of the bounding box, in pixels.
  int diameter_px() const { return std::max(max_i - min_i, max_j - min_j) + 1; }
};

/// Bounding boxes of the labeled components, indexed by label - 1.
std::vector<ComponentExtent> component_extents(const RasterGrid& grid);

/// True when the pixel count may legitimately disagree with the exact count:
/// some labeled component is narrower than `min_pixels`, or some root's own
/// component is predicted (radius 1/|Q_k(x_k)|) to be narrower than
/// `min_pixels` and so may be missed entirely. Requires a labeled grid.
bool raster_ambiguous(const RasterGrid& grid, const RootedPolynomial& poly,
                      double min_pixels = 3.0);

/// "P6\n{res} {res}\n255\n".
std::string ppm_header(int resolution);

/// Binary PPM: lemniscate inside the disc green, disc outside the lemniscate
/// red, the centered disc of radius annulus_inner_radius(n, kappa) yellow
/// where it is inside the lemniscate, lemniscate outside the disc light
/// green, everything else white. Throws std::runtime_error naming `path`
/// on I/O failure.
void write_ppm(const RasterGrid& grid, const RootedPolynomial& poly, double kappa,
               const std::string& path);

}  // namespace lemni
