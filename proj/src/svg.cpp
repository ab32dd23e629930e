#include "dabounds/svg.hpp"

#include <cstdio>
#include <sstream>

namespace dabounds::svg {

namespace {
std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}
}  // namespace

Panel::Panel(double px, double py, double width, double height, double x_min, double x_max,
             double y_min, double y_max)
    : px_(px), py_(py), w_(width), h_(height), x_min_(x_min), x_max_(x_max), y_min_(y_min),
      y_max_(y_max) {
    if (x_max_ <= x_min_) x_max_ = x_min_ + 1.0;
    if (y_max_ <= y_min_) y_max_ = y_min_ + 1.0;
}

double Panel::to_px_x(double x) const {
    return px_ + (x - x_min_) / (x_max_ - x_min_) * w_;
}

double Panel::to_px_y(double y) const {
    return py_ + h_ - (y - y_min_) / (y_max_ - y_min_) * h_;
}

void Panel::polyline(const std::vector<Point>& pts, const std::string& color,
                     double stroke_width, bool dashed) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
       << num(stroke_width) << "\"";
    if (dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (const Point& p : pts) {
        os << num(to_px_x(p.x)) << ',' << num(to_px_y(p.y)) << ' ';
    }
    os << "\"/>\n";
    body_ += os.str();
}

void Panel::line(Point a, Point b, const std::string& color, double stroke_width,
                 bool dashed) {
    std::ostringstream os;
    os << "<line x1=\"" << num(to_px_x(a.x)) << "\" y1=\"" << num(to_px_y(a.y)) << "\" x2=\""
       << num(to_px_x(b.x)) << "\" y2=\"" << num(to_px_y(b.y)) << "\" stroke=\"" << color
       << "\" stroke-width=\"" << num(stroke_width) << "\"";
    if (dashed) os << " stroke-dasharray=\"6 4\"";
    os << "/>\n";
    body_ += os.str();
}

void Panel::circle(Point center, double radius_px, const std::string& color) {
    std::ostringstream os;
    os << "<circle cx=\"" << num(to_px_x(center.x)) << "\" cy=\"" << num(to_px_y(center.y))
       << "\" r=\"" << num(radius_px) << "\" fill=\"" << color << "\"/>\n";
    body_ += os.str();
}

void Panel::text(Point at, const std::string& label, int font_px,
                 const std::string& anchor) {
    std::ostringstream os;
    os << "<text x=\"" << num(to_px_x(at.x)) << "\" y=\"" << num(to_px_y(at.y))
       << "\" font-size=\"" << font_px << "\" font-family=\"sans-serif\" text-anchor=\""
       << anchor << "\">" << label << "</text>\n";
    body_ += os.str();
}

void Panel::frame() {
    std::ostringstream os;
    os << "<rect x=\"" << num(px_) << "\" y=\"" << num(py_) << "\" width=\"" << num(w_)
       << "\" height=\"" << num(h_) << "\" fill=\"none\" stroke=\"#444\""
       << " stroke-width=\"1\"/>\n";
    body_ += os.str();
}

void Panel::axis_labels(const std::string& x_label, const std::string& y_label) {
    std::ostringstream os;
    os << "<text x=\"" << num(px_ + w_ / 2) << "\" y=\"" << num(py_ + h_ + 28)
       << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\">" << x_label
       << "</text>\n";
    os << "<text x=\"" << num(px_ - 30) << "\" y=\"" << num(py_ + h_ / 2)
       << "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"middle\""
       << " transform=\"rotate(-90 " << num(px_ - 30) << ' ' << num(py_ + h_ / 2) << ")\">"
       << y_label << "</text>\n";
    body_ += os.str();
}

std::string document(double width, double height, const std::vector<Panel>& panels,
                     const std::string& title) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
       << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty()) {
        os << "<text x=\"" << num(width / 2)
           << "\" y=\"20\" font-size=\"14\" font-family=\"sans-serif\""
           << " text-anchor=\"middle\">" << title << "</text>\n";
    }
    for (const Panel& p : panels) os << p.body();
    os << "</svg>\n";
    return os.str();
}

}  // namespace dabounds::svg
