#include "padiclab/render.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace padiclab {

namespace {

// Pixel coordinate of an abscissa in [0,2] on a `size`-wide viewport.
std::string px(const mpq_class& v, int size) {
    return DyadicRational::from_mpq(v * size / 2).to_decimal_string();
}

// y grows upward mathematically; SVG's y grows downward.
std::string py(const mpq_class& v, int size) {
    return DyadicRational::from_mpq(mpq_class(size) - v * size / 2).to_decimal_string();
}

// 1-pixel point rectangles hang below their anchor; keep the y = 0 row
// inside the canvas.
std::string py_point(const mpq_class& v, int size) {
    return DyadicRational::from_mpq(mpq_class(size - 1) - v * size / 2).to_decimal_string();
}

void svg_open(std::ostream& os, int w, int h) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
       << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
}

}  // namespace

void write_points_csv(std::ostream& os, int k) {
    os << "n,x_num,x_exp,y_num,y_exp\n";
    for_each_grid_point(k, [&](const GridPoint& p) {
        os << p.n << ',' << p.x.num.get_str() << ',' << p.x.exp << ',' << p.y.num.get_str()
           << ',' << p.y.exp << '\n';
    });
}

void write_points_svg(std::ostream& os, int k) {
    const int size = 1024;
    svg_open(os, size, size);
    for_each_grid_point(k, [&](const GridPoint& p) {
        os << "<rect x=\"" << px(p.x.to_mpq(), size) << "\" y=\"" << py_point(p.y.to_mpq(), size)
           << "\" width=\"1\" height=\"1\"/>\n";
    });
    os << "</svg>\n";
}

void write_boxes_svg(std::ostream& os, int k, int points_depth) {
    const int size = 1024;
    svg_open(os, size, size);
    for_each_grid_point(points_depth, [&](const GridPoint& p) {
        os << "<rect x=\"" << px(p.x.to_mpq(), size) << "\" y=\"" << py_point(p.y.to_mpq(), size)
           << "\" width=\"1\" height=\"1\" fill=\"silver\"/>\n";
    });
    BoxCover cover = box_cover(k);
    const mpq_class side = cover.side.to_mpq();
    const std::string side_px = DyadicRational::from_mpq(side * size / 2).to_decimal_string();
    for (const auto& c : cover.corners) {
        os << "<rect x=\"" << px(c.x.to_mpq(), size) << "\" y=\""
           << py(c.y.to_mpq() + side, size) << "\" width=\"" << side_px << "\" height=\""
           << side_px << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    os << "</svg>\n";
}

void write_squares_svg(std::ostream& os, int k_lo, int k_hi, int detail) {
    if (k_lo < 2 || k_hi < k_lo) throw std::invalid_argument("write_squares_svg: bad range");
    const int panel = 512;
    const int cols = 3;
    const int n_panels = k_hi - k_lo + 1;
    const int rows = (n_panels + cols - 1) / cols;
    svg_open(os, cols * panel, rows * panel);
    for (int k = k_lo; k <= k_hi; ++k) {
        const int idx = k - k_lo;
        const int ox = (idx % cols) * panel;
        const int oy = (idx / cols) * panel;
        IntervalFamily f = interval_family(k);
        // Square: J_k^2 for even k, I_k x J_k for odd k.
        const mpq_class x0 = (k % 2 == 0) ? f.j_lo : f.i_lo;
        const mpq_class y0 = f.j_lo;
        const mpq_class scale = mpq_class(panel) * (mpz_class(1) << (k - 1));  // panel / side
        os << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << panel << "\" height=\""
           << panel << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        const int depth = k + detail;
        if (depth > 24) throw std::invalid_argument("write_squares_svg: detail too deep");
        for (std::uint64_t t = 0; t < (std::uint64_t(1) << detail); ++t) {
            std::uint64_t r = f.alpha + (t << k);
            GridPoint p = embed_residue(r, depth);
            mpq_class sx = (p.x.to_mpq() - x0) * scale;
            mpq_class sy = (p.y.to_mpq() - y0) * scale;
            os << "<rect x=\"" << DyadicRational::from_mpq(ox + sx).to_decimal_string()
               << "\" y=\"" << DyadicRational::from_mpq(oy + (panel - 1 - sy)).to_decimal_string()
               << "\" width=\"1\" height=\"1\"/>\n";
        }
    }
    os << "</svg>\n";
}

void atomic_write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open " + tmp + " for writing");
        os << contents;
        if (!os) throw std::runtime_error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

}  // namespace padiclab
