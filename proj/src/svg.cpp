#include "diskpack/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace diskpack {

namespace {

void require_window(const Box& w) {
    if (!std::isfinite(w.area()) || !(w.width() > 0) || !(w.height() > 0))
        throw std::invalid_argument("render: window has zero area");
}

bool disk_meets_box(Point c, double r, const Box& w) {
    const double dx = c.x - std::clamp(c.x, w.xmin, w.xmax);
    const double dy = c.y - std::clamp(c.y, w.ymin, w.ymax);
    return dx * dx + dy * dy < r * r;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

/// Writes SVG in window coordinates; y grows upward in the model and
/// downward in the image.
class SvgWriter {
public:
    explicit SvgWriter(const Box& w) : w_(w) {
        const double width = w.width() * kPixelsPerUnit, height = w.height() * kPixelsPerUnit;
        out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) +
                "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
        out_ += "<defs><clipPath id=\"window\"><rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" +
                fmt(height) + "\"/></clipPath></defs>\n";
        out_ += "<rect x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" + fmt(height) + "\" fill=\"white\"/>\n";
        out_ += "<g clip-path=\"url(#window)\">\n";
    }

    void circle(Point c, double r) {
        out_ += "<circle cx=\"" + fmt(px(c.x)) + "\" cy=\"" + fmt(py(c.y)) + "\" r=\"" + fmt(r * kPixelsPerUnit) +
                "\" fill=\"steelblue\" fill-opacity=\"0.3\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }

    void polygon(const std::vector<Point>& pts) {
        out_ += "<polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out_ += ' ';
            out_ += fmt(px(pts[i].x)) + "," + fmt(py(pts[i].y));
        }
        out_ += "\" fill=\"none\" stroke=\"crimson\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
    }

    std::string finish() { return out_ + "</g>\n</svg>\n"; }

private:
    double px(double x) const { return (x - w_.xmin) * kPixelsPerUnit; }
    double py(double y) const { return (w_.ymax - y) * kPixelsPerUnit; }

    Box w_;
    std::string out_;
};

std::vector<Point> centers_meeting(const PeriodicArrangement& a, const Box& w) {
    const Point mid{(w.xmin + w.xmax) / 2, (w.ymin + w.ymax) / 2};
    const double reach = std::hypot(w.width(), w.height()) / 2 + a.radius();
    std::vector<DiskCopy> copies = a.copies_near(mid, reach);
    std::sort(copies.begin(), copies.end());
    std::vector<Point> out;
    for (const DiskCopy& c : copies) {
        const Point p = a.center(c);
        if (disk_meets_box(p, a.radius(), w)) out.push_back(p);
    }
    return out;
}

}  // namespace

std::size_t rendered_disk_count(const PeriodicArrangement& a, const Box& window) {
    require_window(window);
    return centers_meeting(a, window).size();
}

std::string render_svg(const PeriodicArrangement& a, const Box& window) {
    require_window(window);
    SvgWriter svg(window);
    for (const Point& p : centers_meeting(a, window)) svg.circle(p, a.radius());
    const Point r0 = a.lattice().reduced(0), r1 = a.lattice().reduced(1);
    svg.polygon({{0, 0}, r0, r0 + r1, r1});
    return svg.finish();
}

std::string render_svg(const Cluster& c, const Box& window) {
    require_window(window);
    SvgWriter svg(window);
    for (const Point& p : c.centers)
        if (disk_meets_box(p, 1.0, window)) svg.circle(p, 1.0);
    return svg.finish();
}

std::string render_svg(const Cluster& c) {
    Box b{c.centers.front().x, c.centers.front().x, c.centers.front().y, c.centers.front().y};
    for (const Point& p : c.centers) {
        b.xmin = std::min(b.xmin, p.x);
        b.xmax = std::max(b.xmax, p.x);
        b.ymin = std::min(b.ymin, p.y);
        b.ymax = std::max(b.ymax, p.y);
    }
    return render_svg(c, {b.xmin - 1.5, b.xmax + 1.5, b.ymin - 1.5, b.ymax + 1.5});
}

}  // namespace diskpack
