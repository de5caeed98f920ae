#include "navstack/plots.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace navstack {

namespace {

struct Bounds {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }

    void pad() {
        if (!(xmax > xmin)) {
            xmin -= 0.5;
            xmax += 0.5;
        }
        if (!(ymax > ymin)) {
            ymin -= 0.5;
            ymax += 0.5;
        }
        const double px = 0.05 * (xmax - xmin);
        const double py = 0.05 * (ymax - ymin);
        xmin -= px;
        xmax += px;
        ymin -= py;
        ymax += py;
    }
};

constexpr int kW = 640;
constexpr int kH = 480;
constexpr int kMargin = 40;

class Canvas {
public:
    Canvas(std::ostream& os, const Bounds& b) : os_(os), b_(b) {
        os_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
            << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
        os_ << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
            << kW - 2 * kMargin << "\" height=\"" << kH - 2 * kMargin
            << "\" fill=\"white\" stroke=\"black\"/>\n";
    }

    double px(double x) const {
        return kMargin + (x - b_.xmin) / (b_.xmax - b_.xmin) * (kW - 2 * kMargin);
    }
    double py(double y) const {
        return kH - kMargin - (y - b_.ymin) / (b_.ymax - b_.ymin) * (kH - 2 * kMargin);
    }

    void polyline(const std::vector<Point2>& pts, const char* color,
                  const char* dash = nullptr) {
        if (pts.empty()) {
            return;
        }
        os_ << "<polyline fill=\"none\" stroke=\"" << color << "\"";
        if (dash != nullptr) {
            os_ << " stroke-dasharray=\"" << dash << "\"";
        }
        os_ << " points=\"";
        for (const auto& p : pts) {
            os_ << px(p.x) << "," << py(p.y) << " ";
        }
        os_ << "\"/>\n";
    }

    void dots(const std::vector<Point2>& pts, const char* color, double r = 1.5) {
        for (const auto& p : pts) {
            os_ << "<circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"" << r
                << "\" fill=\"" << color << "\"/>\n";
        }
    }

    void text(double x, double y, const std::string& s, const char* color = "black") {
        os_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"12\" fill=\"" << color
            << "\">" << s << "</text>\n";
    }

    void close() { os_ << "</svg>\n"; }

private:
    std::ostream& os_;
    Bounds b_;
};

std::vector<Point2> series(const std::vector<CsvRow>& rows, double CsvRow::* xf,
                           double CsvRow::* yf) {
    std::vector<Point2> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back({r.*xf, r.*yf});
    }
    return out;
}

}  // namespace

std::vector<CsvRow> parse_trajectory_csv(std::istream& is) {
    std::vector<CsvRow> rows;
    std::string line;
    if (!std::getline(is, line)) {
        return rows;
    }
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        CsvRow r;
        if (!(ls >> r.t >> r.x_true >> r.y_true >> r.theta_true >> r.x_est >> r.y_est >>
              r.theta_est >> r.cov_trace >> r.v >> r.omega >> r.rho >> r.alpha >> r.phi >>
              r.lyapunov >> r.mode)) {
            throw std::invalid_argument("parse_trajectory_csv: bad row: " + line);
        }
        rows.push_back(r);
    }
    return rows;
}

void svg_trajectory(std::ostream& os, const std::vector<CsvRow>& rows, const ObstacleMap& map) {
    Bounds b;
    for (const auto& r : rows) {
        b.add(r.x_true, r.y_true);
        b.add(r.x_est, r.y_est);
    }
    for (const auto& p : map.points) {
        b.add(p.x, p.y);
    }
    b.pad();
    Canvas c(os, b);
    c.dots(map.points, "gray");
    c.polyline(series(rows, &CsvRow::x_true, &CsvRow::y_true), "black");
    c.polyline(series(rows, &CsvRow::x_est, &CsvRow::y_est), "blue", "4,3");
    c.text(kMargin + 5, 20, "trajectory: true (black), estimated (blue)");
    c.close();
}

void svg_velocities(std::ostream& os, const std::vector<CsvRow>& rows) {
    Bounds b;
    for (const auto& r : rows) {
        b.add(r.t, r.v);
        b.add(r.t, r.omega);
    }
    b.pad();
    Canvas c(os, b);
    c.polyline(series(rows, &CsvRow::t, &CsvRow::v), "black");
    c.polyline(series(rows, &CsvRow::t, &CsvRow::omega), "red");
    c.text(kMargin + 5, 20, "v [m/s] (black), omega [rad/s] (red) vs t [s]");
    c.close();
}

void svg_lyapunov(std::ostream& os, const std::vector<CsvRow>& rows) {
    Bounds b;
    for (const auto& r : rows) {
        b.add(r.t, r.lyapunov);
    }
    b.add(0.0, 0.0);
    b.pad();
    Canvas c(os, b);
    c.polyline(series(rows, &CsvRow::t, &CsvRow::lyapunov), "black");
    c.text(kMargin + 5, 20, "V vs t [s]");
    c.close();
}

void svg_overlay(std::ostream& os, const std::vector<LabelledPath>& paths) {
    static const char* colors[] = {"black", "blue", "red", "green", "orange", "purple"};
    Bounds b;
    for (const auto& p : paths) {
        for (const auto& q : p.points) {
            b.add(q.x, q.y);
        }
    }
    b.pad();
    Canvas c(os, b);
    for (size_t i = 0; i < paths.size(); ++i) {
        const char* color = colors[i % 6];
        c.polyline(paths[i].points, color);
        c.text(kMargin + 5, 20 + 14 * static_cast<double>(i), paths[i].label, color);
    }
    c.close();
}

void svg_map(std::ostream& os, const ObstacleMap& map) {
    Bounds b;
    for (const auto& p : map.points) {
        b.add(p.x, p.y);
    }
    b.add(0.0, 0.0);
    b.pad();
    Canvas c(os, b);
    c.dots(map.points, "black");
    c.text(kMargin + 5, 20, "in-band obstacle points");
    c.close();
}

}  // namespace navstack
