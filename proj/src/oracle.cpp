#include "lpball/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>

#include "lpball/csv.hpp"
#include "lpball/errors.hpp"

namespace lpball {

namespace {

struct Arc {
    const ProjectionProblem& prob;

    Vector point(double s) const {
        const double p = prob.p;
        s = std::clamp(s, 0.0, prob.gamma);
        Vector x(2);
        x[0] = std::pow(s, 1.0 / p);
        x[1] = std::pow(prob.gamma - s, 1.0 / p);
        return x;
    }

    double objective(const Vector& x) const { return 0.5 * (x - prob.y).squaredNorm(); }
    double objective(double s) const { return objective(point(s)); }
};

double golden_section(const Arc& arc, double lo, double hi, int iterations) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = arc.objective(c);
    double fd = arc.objective(d);
    for (int it = 0; it < iterations && b - a > 0.0; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = arc.objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = arc.objective(d);
        }
    }
    return fc <= fd ? c : d;
}

} // namespace

OracleResult sphere_search_2d(const ProjectionProblem& prob, long resolution) {
    prob.validate();
    if (prob.y.size() != 2)
        throw InvalidInput("sphere_search_2d supports n = 2 only");
    if (resolution < 1)
        throw InvalidInput("sphere_search_2d: resolution must be positive");
    if (lp_norm_p(prob.y, prob.p) < prob.gamma)
        throw InvalidInput("sphere_search_2d: signal lies strictly inside the ball");

    const Arc arc{prob};
    const double s_max = std::min(std::pow(prob.y[0], prob.p), prob.gamma);
    const double cell = s_max / static_cast<double>(resolution);

    long best_j = 0;
    double best_f = arc.objective(0.0);
    for (long j = 1; j <= resolution; ++j) {
        const double f = arc.objective(cell * static_cast<double>(j));
        if (f < best_f) {
            best_f = f;
            best_j = j;
        }
    }

    OracleResult result;
    result.grid_resolution = cell;
    result.x_best = arc.point(cell * static_cast<double>(best_j));
    result.objective = best_f;

    if (cell > 0.0) {
        const double lo = std::max(0.0, cell * static_cast<double>(best_j - 2));
        const double hi = std::min(s_max, cell * static_cast<double>(best_j + 2));
        const double s = golden_section(arc, lo, hi, 200);
        const double f = arc.objective(s);
        if (f < result.objective) {
            result.objective = f;
            result.x_best = arc.point(s);
            result.refined = true;
        }
    }

    // Axis points: the support-dropping candidates.
    const double r = std::pow(prob.gamma, 1.0 / prob.p);
    for (const auto& candidate : {Vector{{r, 0.0}}, Vector{{0.0, r}}}) {
        const double f = arc.objective(candidate);
        if (f < result.objective) {
            result.objective = f;
            result.x_best = candidate;
            result.refined = false;
        }
    }
    return result;
}

bool stationarity_check(const Vector& x, double lambda, const ProjectionProblem& prob, double tol) {
    if (x.size() != prob.y.size() || !x.allFinite() || !std::isfinite(lambda))
        return false;
    if (lambda < -tol)
        return false;
    double norm_p = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] < -tol)
            return false;
        const double xi = std::max(x[i], 0.0);
        const double xp = xi == 0.0 ? 0.0 : std::pow(xi, prob.p);
        norm_p += xp;
        if (std::abs((prob.y[i] - xi) * xi - lambda * prob.p * xp) > tol)
            return false;
    }
    return std::abs(norm_p - prob.gamma) <= tol;
}

std::string instance_key(const ProjectionProblem& prob) {
    std::string text = "p=" + format_double(prob.p) + ";gamma=" + format_double(prob.gamma) + ";y=";
    for (Eigen::Index i = 0; i < prob.y.size(); ++i) {
        if (i)
            text += ',';
        text += format_double(prob.y[i]);
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h;
    return out.str();
}

std::map<std::string, double> read_fixtures(std::istream& in) {
    std::map<std::string, double> fixtures;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string key;
        std::string value;
        if (!(fields >> key))
            continue;
        if (!(fields >> value))
            throw InvalidInput("fixture line " + std::to_string(line_no) + ": missing value");
        fixtures[key] = parse_double(value);
    }
    return fixtures;
}

void write_fixtures(std::ostream& out, const std::map<std::string, double>& fixtures) {
    for (const auto& [key, value] : fixtures)
        out << key << ' ' << format_double(value) << '\n';
}

} // namespace lpball
