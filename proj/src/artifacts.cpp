#include "lagmin/artifacts.hpp"

#include <cmath>
#include <cstdio>

namespace lagmin {

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void row(std::string& out, const RVec& vals) {
    for (size_t i = 0; i < vals.size(); ++i) {
        if (i) out += ',';
        out += fmt(vals[i]);
    }
    out += '\n';
}

}  // namespace

std::string csv_planar_curve(const PlanarCurve& c, int ambient_n, int samples) {
    std::string out = "s,re,im,kappa,G_alpha,A_alpha\n";
    bool angles_ok = true;
    double probe = 0.5 * (c.domain_begin() + c.domain_end());
    try {
        g_alpha(c, ambient_n, probe);
    } catch (const OriginCrossing&) {
        angles_ok = false;
    }
    for (int i = 0; i < samples; ++i) {
        double s = c.domain_begin() +
                   (c.domain_end() - c.domain_begin()) * i / (samples - 1);
        Complex z = c.value(s);
        double g = angles_ok ? g_alpha(c, ambient_n, s) : std::nan("");
        double a = angles_ok ? a_alpha(c, ambient_n, s) : std::nan("");
        row(out, {s, z.real(), z.imag(), c.curvature(s), g, a});
    }
    return out;
}

std::string csv_s3_curve(const LegendrianMap& gamma, int samples) {
    std::string out = "t,re1,im1,re2,im2,beta\n";
    auto beta = beta_along_s3_curve(gamma);
    double a = gamma.axes[0].a, b = gamma.axes[0].b;
    for (int i = 0; i < samples; ++i) {
        double t = a + (b - a) * i / (samples - 1);
        CVec v = gamma.value({t});
        row(out, {t, v[0].real(), v[0].imag(), v[1].real(), v[1].imag(),
                  beta(t)});
    }
    return out;
}

std::string csv_h31_curve(const HyperbolicLegendrianCurve& alpha, int samples) {
    std::string out = "t,re1,im1,re2,im2,beta\n";
    auto beta = beta_along_h31_curve(alpha);
    for (int i = 0; i < samples; ++i) {
        double t = alpha.dom_a + (alpha.dom_b - alpha.dom_a) * i / (samples - 1);
        Complex z = alpha.a1(t), w = alpha.a2(t);
        row(out, {t, z.real(), z.imag(), w.real(), w.imag(), beta(t)});
    }
    return out;
}

std::string csv_hopf_sphere(const LegendrianMap& gamma, int samples) {
    std::string out = "t,x1,x2,x3\n";
    double a = gamma.axes[0].a, b = gamma.axes[0].b;
    for (int i = 0; i < samples; ++i) {
        double t = a + (b - a) * i / (samples - 1);
        CVec v = gamma.value({t});
        auto x = hopf_project_sphere(v[0], v[1]);
        row(out, {t, x[0], x[1], x[2]});
    }
    return out;
}

std::string csv_hopf_hyperbolic(const HyperbolicLegendrianCurve& alpha,
                                int samples) {
    std::string out = "t,x1,x2,x3\n";
    for (int i = 0; i < samples; ++i) {
        double t = alpha.dom_a + (alpha.dom_b - alpha.dom_a) * i / (samples - 1);
        auto x = hopf_project_hyperbolic(alpha.a1(t), alpha.a2(t));
        row(out, {t, x[0], x[1], x[2]});
    }
    return out;
}

std::string csv_immersion(const LagrangianImmersion& im, const GridSpec& spec) {
    Grid g = make_grid(im.axes, spec);
    std::string out;
    for (size_t i = 0; i < im.axes.size(); ++i)
        out += (i ? ",p" : "p") + std::to_string(i + 1);
    for (int j = 0; j < im.dim; ++j)
        out += ",re" + std::to_string(j + 1) + ",im" + std::to_string(j + 1);
    out += '\n';
    for (size_t id = 0; id < g.size(); ++id) {
        RVec p = g.point(g.unflatten(id));
        CVec v = im.value(p);
        RVec vals = p;
        for (int j = 0; j < im.dim; ++j) {
            vals.push_back(v[j].real());
            vals.push_back(v[j].imag());
        }
        row(out, vals);
    }
    return out;
}

std::string csv_residuals(const AngleField& field,
                          const std::vector<double>& hessian) {
    const Grid& g = field.grid;
    std::string out;
    for (size_t i = 0; i < g.axes.size(); ++i)
        out += (i ? ",p" : "p") + std::to_string(i + 1);
    out += ",abs_laplacian,hessian_norm\n";
    for (size_t id = 0; id < g.size(); ++id) {
        RVec vals = g.point(g.unflatten(id));
        vals.push_back(std::abs(field.laplacian[id]));
        vals.push_back(id < hessian.size() ? hessian[id] : std::nan(""));
        row(out, vals);
    }
    return out;
}

std::string report_text(const VerificationReport& rep) {
    std::string out = "grid =";
    for (int c : rep.grid_counts) out += " " + std::to_string(c);
    out += '\n';
    for (const auto& [name, c] : rep.checks) {
        out += "check " + name + " = ";
        if (!c.ran) {
            out += "skipped\n";
            continue;
        }
        out += std::string(c.pass ? "pass" : "fail") +
               " max_residual=" + fmt(c.max_residual) + " tol=" +
               fmt(c.tolerance) + "\n";
    }
    out += "mean_laplacian = " + fmt(rep.mean_laplacian) + "\n";
    for (const auto& n : rep.notes) out += "note " + n + "\n";
    out += std::string("result = ") + (rep.all_pass() ? "pass" : "fail") + "\n";
    return out;
}

std::string svg_curve(const std::vector<std::pair<double, double>>& pts,
                      double stroke_width) {
    if (pts.empty()) throw InvalidInput("svg_curve: no points");
    double xmin = pts[0].first, xmax = xmin, ymin = pts[0].second, ymax = ymin;
    for (const auto& [x, y] : pts) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    double span = std::max(std::max(xmax - xmin, ymax - ymin), 1e-9);
    double pad = 0.05 * span;
    xmin -= pad, xmax += pad, ymin -= pad, ymax += pad;
    // keep unit scales equal on both axes (curves must not be stretched)
    char head[256];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" "
                  "height=\"%d\" viewBox=\"%s %s %s %s\">\n",
                  static_cast<int>(512.0 * (ymax - ymin) / (xmax - xmin)),
                  fmt(xmin).c_str(), fmt(-ymax).c_str(), fmt(xmax - xmin).c_str(),
                  fmt(ymax - ymin).c_str());
    std::string out = head;
    out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"" +
           fmt(stroke_width * (xmax - xmin) / 512.0) + "\" points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += fmt(pts[i].first) + "," + fmt(-pts[i].second);  // y up
    }
    out += "\"/>\n</svg>\n";
    return out;
}

std::string svg_heatmap(const std::vector<int>& counts,
                        const std::vector<double>& values) {
    if (counts.size() != 2)
        throw InvalidInput("svg_heatmap: expected a 2D grid");
    const int n0 = counts[0], n1 = counts[1];
    if (values.size() != static_cast<size_t>(n0) * n1)
        throw InvalidInput("svg_heatmap: value count does not match the grid");
    double vmax = 0.0;
    for (double v : values)
        if (!std::isnan(v)) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) vmax = 1.0;
    const int cell = 8;
    char head[160];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
                  "height=\"%d\">\n",
                  n1 * cell, n0 * cell);
    std::string out = head;
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j) {
            double v = values[static_cast<size_t>(i) * n1 + j];
            if (std::isnan(v)) continue;
            // white at 0 toward red (positive) or blue (negative)
            double t = std::min(std::abs(v) / vmax, 1.0);
            int other = static_cast<int>(std::lround(255.0 * (1.0 - t)));
            int r = v >= 0.0 ? 255 : other;
            int b = v >= 0.0 ? other : 255;
            char rect[160];
            std::snprintf(rect, sizeof rect,
                          "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" "
                          "fill=\"rgb(%d,%d,%d)\"/>\n",
                          j * cell, i * cell, cell, cell, r, other, b);
            out += rect;
        }
    out += "</svg>\n";
    return out;
}

}  // namespace lagmin
