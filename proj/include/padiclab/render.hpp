#ifndef PADICLAB_RENDER_HPP
#define PADICLAB_RENDER_HPP

#include <ostream>
#include <string>
#include <vector>

#include "padiclab/cycle_analysis.hpp"
#include "padiclab/cycle_search.hpp"
#include "padiclab/embedding.hpp"
#include "padiclab/q_map.hpp"

namespace padiclab {

/// All emitters are deterministic: fixed element order (ascending n),
/// exact decimal coordinates, no timestamps.

/// CSV of grid points, header n,x_num,x_exp,y_num,y_exp.
void write_points_csv(std::ostream& os, int k);

/// 1024x1024 viewport, mathematical orientation (y grows upward), points
/// as 1-pixel rectangles.
void write_points_svg(std::ostream& os, int k);

/// Box cover outlines at depth k over the depth-12 point cloud.
void write_boxes_svg(std::ostream& os, int k, int points_depth = 12);

/// Enlarged square panels (row-major, three per row, ascending k in
/// [k_lo, k_hi]): for each k the square J_k^2 (k even) or I_k x J_k (k odd)
/// with the points of parameter class alpha_k mod 2^k, at detail depth
/// k + detail bits.
void write_squares_svg(std::ostream& os, int k_lo, int k_hi, int detail = 12);

/// Exact point records [{r, q_of_r, x, y}, ...] as JSON.
std::string points_json(const std::vector<EmbeddedPoint>& points);

/// Grid points as JSON with dyadic coordinates.
std::string grid_points_json(int k);

/// Ergodic enumeration as JSON: counts table, measure summary, and one
/// record per set {k, m0, length, elements, measure}.
std::string ergodic_json(const ErgodicEnumeration& e);

/// Search report as JSON: config echo, survivors, verification status,
/// wall clock.
std::string search_json(const SearchReport& r);

std::string fixed_points_json(const FixedPointReport& r);

std::string feq_json(const FeqReport& r);
const char* feq_status_name(FeqStatus s);

/// Writes via a temp file in the same directory, then renames into place.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace padiclab

#endif
