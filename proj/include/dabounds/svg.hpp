#pragma once

#include <string>
#include <vector>

namespace dabounds::svg {

// Minimal hand-written SVG emitter: enough for density panels and trajectory
// line plots, with no rendering dependency. Coordinates are data-space; each
// panel maps them onto its pixel viewport.
struct Point {
    double x;
    double y;
};

class Panel {
public:
    Panel(double px, double py, double width, double height, double x_min, double x_max,
          double y_min, double y_max);

    void polyline(const std::vector<Point>& pts, const std::string& color,
                  double stroke_width = 1.5, bool dashed = false);
    void line(Point a, Point b, const std::string& color, double stroke_width = 1.0,
              bool dashed = false);
    void circle(Point center, double radius_px, const std::string& color);
    void text(Point at, const std::string& label, int font_px = 11,
              const std::string& anchor = "start");
    void frame();
    void axis_labels(const std::string& x_label, const std::string& y_label);

    const std::string& body() const { return body_; }

private:
    double to_px_x(double x) const;
    double to_px_y(double y) const;

    double px_, py_, w_, h_;
    double x_min_, x_max_, y_min_, y_max_;
    std::string body_;
};

std::string document(double width, double height, const std::vector<Panel>& panels,
                     const std::string& title = "");

}  // namespace dabounds::svg
