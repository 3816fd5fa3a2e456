#include "sqz/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sqz::cli {

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& rows) {
    auto out = open_for_write(path);
    out << kTrajectoryHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.tau) << ',' << format_number(r.x) << ',' << format_number(r.p) << ','
            << format_number(r.var_x) << ',' << format_number(r.var_p) << ','
            << format_number(r.cov_xp) << ',' << format_number(r.product) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader)
        throw std::runtime_error("'" + path + "' lacks the trajectory header");
    Trajectory rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        double v[7];
        for (double& x : v) {
            if (!std::getline(ls, cell, ',')) throw std::runtime_error("short row in '" + path + "'");
            x = std::stod(cell);
        }
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
    }
    return rows;
}

void write_trajectory_json(const std::string& path, const Trajectory& rows,
                           const nlohmann::json& meta) {
    nlohmann::json cols;
    auto column = [&](const char* name, double TrajectoryRow::*field) {
        std::vector<double> v;
        v.reserve(rows.size());
        for (const auto& r : rows) v.push_back(r.*field);
        cols[name] = v;
    };
    column("tau", &TrajectoryRow::tau);
    column("x", &TrajectoryRow::x);
    column("p", &TrajectoryRow::p);
    column("var_x", &TrajectoryRow::var_x);
    column("var_p", &TrajectoryRow::var_p);
    column("cov_xp", &TrajectoryRow::cov_xp);
    column("product", &TrajectoryRow::product);
    nlohmann::json doc = {{"columns", cols}};
    if (!meta.is_null()) doc["meta"] = meta;
    auto out = open_for_write(path);
    out << doc.dump(1) << '\n';
}

void write_svg_plot(const std::string& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<double>& xs,
                    const std::vector<double>& ys) {
    constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
    double x0 = xs.empty() ? 0 : *xmin_it, x1 = xs.empty() ? 1 : *xmax_it;
    double y0 = ys.empty() ? 0 : *ymin_it, y1 = ys.empty() ? 1 : *ymax_it;
    if (x1 - x0 <= 0) x1 = x0 + 1;
    if (y1 - y0 <= 1e-12 * std::max(1.0, std::abs(y0))) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    auto out = open_for_write(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << xml_escape(title) << "</text>\n"
        << "<g stroke=\"black\" stroke-width=\"1\">"
        << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>"
        << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\"/>"
        << "</g>\n<g font-size=\"11\">"
        << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << short_number(x0) << "</text>"
        << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << short_number(x1) << "</text>"
        << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" text-anchor=\"end\">" << short_number(y0) << "</text>"
        << "<text x=\"" << L - 6 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\">" << short_number(y1) << "</text>"
        << "</g>\n"
        << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"13\">"
        << xml_escape(xlabel) << "</text>\n"
        << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << (T + H - B) / 2 << ")\">" << xml_escape(ylabel) << "</text>\n"
        << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i)
        out << short_number(px(xs[i])) << ',' << short_number(py(ys[i])) << ' ';
    out << "\"/>\n</svg>\n";
}

std::string strip_extension(const std::string& path) {
    std::filesystem::path p(path);
    const auto ext = p.extension().string();
    if (ext == ".csv" || ext == ".json" || ext == ".svg") p.replace_extension();
    return p.string();
}

std::string with_extension(const std::string& path, const std::string& ext) {
    return strip_extension(path) + ext;
}

} // namespace sqz::cli
