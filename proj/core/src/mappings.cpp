#include "pcm/mappings.hpp"

#include <cmath>
#include <sstream>

#include "pcm/error.hpp"

namespace pcm {

namespace {

std::string format_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string format_point(const Point& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ',';
        s += format_number(p[i]);
    }
    return s;
}

}  // namespace

Mapping rotation_half() {
    auto fn = [](std::span<const double> u) -> Point {
        if (u.size() != 2) throw InvalidParameter("rotation-half is defined on R^2");
        const Point au{-u[1], u[0]};
        const double nu = norm2(u);
        const double nau = norm2(au);
        if (nau == 0.0) return Point{0.0, 0.0};
        const double k = nu / nau;
        return Point{0.5 * (u[0] + k * au[0]), 0.5 * (u[1] + k * au[1])};
    };
    return Mapping{"rotation-half", fn,
                   {"rotation-half: the formula is undefined at the origin; T(0) := 0 "
                    "(its unique fixed point and continuity limit)"}};
}

Mapping scale(double c) {
    if (!std::isfinite(c)) throw InvalidParameter("scale factor must be finite");
    auto fn = [c](std::span<const double> u) {
        Point out(u.begin(), u.end());
        for (auto& v : out) v *= c;
        return out;
    };
    return Mapping{"scale:" + format_number(c), fn, {}};
}

Mapping constant(Point c) {
    if (!all_finite(c)) throw InvalidParameter("constant map value must be finite");
    std::string name = "constant:" + format_point(c);
    auto fn = [c = std::move(c)](std::span<const double> u) {
        if (u.size() != c.size()) throw InvalidParameter("constant map dimension mismatch");
        return c;
    };
    return Mapping{std::move(name), fn, {}};
}

Mapping identity() {
    return Mapping{"identity", [](std::span<const double> u) { return Point(u.begin(), u.end()); },
                   {}};
}

Mapping affine(std::vector<std::vector<double>> a, Point b) {
    const std::size_t d = b.size();
    if (d == 0 || a.size() != d) throw InvalidParameter("affine map needs a square d x d matrix");
    for (const auto& row : a) {
        if (row.size() != d) throw InvalidParameter("affine map needs a square d x d matrix");
        if (!all_finite(row)) throw InvalidParameter("affine matrix must be finite");
    }
    if (!all_finite(b)) throw InvalidParameter("affine offset must be finite");
    std::string name = "affine:";
    for (std::size_t i = 0; i < d; ++i) {
        if (i) name += ',';
        name += format_point(a[i]);
    }
    name += ';' + format_point(b);
    auto fn = [a = std::move(a), b = std::move(b)](std::span<const double> u) {
        if (u.size() != b.size()) throw InvalidParameter("affine map dimension mismatch");
        Point out(b);
        for (std::size_t i = 0; i < out.size(); ++i)
            for (std::size_t j = 0; j < u.size(); ++j) out[i] += a[i][j] * u[j];
        return out;
    };
    return Mapping{std::move(name), fn, {}};
}

Mapping shift(Point b) {
    if (!all_finite(b)) throw InvalidParameter("shift must be finite");
    std::string name = "shift:" + format_point(b);
    auto fn = [b = std::move(b)](std::span<const double> u) {
        if (u.size() != b.size()) throw InvalidParameter("shift map dimension mismatch");
        Point out(u.begin(), u.end());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
        return out;
    };
    return Mapping{std::move(name), fn, {}};
}

}  // namespace pcm
