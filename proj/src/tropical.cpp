#include "tropodegen/tropical.hpp"

#include "tropodegen/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <thread>

namespace tropodegen {

namespace {

void require_triples(const RationalVector& v) {
    if (v.empty() || v.size() % 3 != 0) throw DimensionError("vector length must be a positive multiple of 3");
}

bool all_zero(const RationalVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

std::string triple_form_violation(const RationalVector& xi) {
    for (std::size_t t = 0; 3 * t < xi.size(); ++t) {
        const Rational& a = xi[3 * t];
        const Rational& b = xi[3 * t + 1];
        const Rational& c = xi[3 * t + 2];
        const bool ok = (a == 0 && b >= 0 && c == -b) || (b == 0 && c >= 0 && a == -c) ||
                        (c == 0 && a >= 0 && b == -a);
        if (!ok)
            return "triple " + std::to_string(t) + " (" + to_string(a) + "," + to_string(b) + "," + to_string(c) +
                   ") is not of the form (0,x,-x), (-x,0,x) or (x,-x,0) with x >= 0";
    }
    return {};
}

Membership prevariety_membership(const GluingSystem& S, const RationalVector& xi) {
    require_triples(xi);
    if (xi.size() != 3 * S.tet_count) throw DimensionError("xi has the wrong number of coordinates");
    if (all_zero(xi)) return {false, "zero vector is not a projective point"};
    if (auto why = triple_form_violation(xi); !why.empty()) return {false, why};
    for (std::size_t j = 0; j < S.A.rows(); ++j)
        if (dot(S.A.row(j), xi) != 0) return {false, "gluing row " + std::to_string(j) + " gives A.xi != 0"};
    return {true, {}};
}

bool sphdual_membership(const std::vector<IntVector>& exponents, const RationalVector& xi) {
    std::set<IntVector> distinct(exponents.begin(), exponents.end());
    bool have = false;
    Rational best = 0;
    int count = 0;
    for (const auto& alpha : distinct) {
        const Rational d = dot(alpha, xi);
        if (!have || d > best) {
            best = d;
            count = 1;
            have = true;
        } else if (d == best) {
            ++count;
        }
    }
    return count >= 2;
}

std::vector<std::vector<IntVector>> parameter_newton_supports() {
    auto v = [](int a, int b, int c) { return IntVector{a, b, c}; };
    return {
        {v(1, 0, 0), v(1, 0, 1), v(0, 0, 0)},  // z - z z'' - 1
        {v(0, 1, 0), v(1, 1, 0), v(0, 0, 0)},  // z' - z z' - 1
        {v(0, 0, 1), v(0, 1, 1), v(0, 0, 0)},  // z'' - z' z'' - 1
    };
}

bool is_admissible(const RationalVector& N) {
    if (N.empty() || N.size() % 3 != 0) return false;
    for (std::size_t t = 0; 3 * t < N.size(); ++t) {
        int nonzero = 0;
        for (int l = 0; l < 3; ++l) {
            if (N[3 * t + l] < 0) return false;
            if (N[3 * t + l] != 0) ++nonzero;
        }
        if (nonzero > 1) return false;
    }
    return true;
}

RationalVector cn_transpose_apply(const RationalVector& N) {
    require_triples(N);
    const IntMatrix ct = skew_block().transpose();
    RationalVector out(N.size(), Rational(0));
    for (std::size_t t = 0; 3 * t < N.size(); ++t)
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (ct(r, c) != 0) out[3 * t + r] += Rational(ct(r, c)) * N[3 * t + c];
    return out;
}

TropicalPoint make_tropical_point(RationalVector xi) {
    TropicalPoint p;
    double norm2 = 0;
    for (const auto& x : xi) norm2 += to_double(x) * to_double(x);
    const double norm = std::sqrt(norm2);
    for (const auto& x : xi) p.unit.push_back(norm > 0 ? to_double(x) / norm : 0.0);
    p.xi = std::move(xi);
    return p;
}

TropicalPoint quads_to_xi(const RationalVector& N) {
    require_triples(N);
    if (!is_admissible(N)) throw AdmissibilityError("quad coordinate is not admissible");
    if (all_zero(N)) throw AdmissibilityError("zero quad coordinate is not a projective point");
    return make_tropical_point(cn_transpose_apply(N));
}

RationalVector xi_to_quads(const RationalVector& xi) {
    require_triples(xi);
    if (auto why = triple_form_violation(xi); !why.empty()) throw FormError(why);
    RationalVector N(xi.size(), Rational(0));
    for (std::size_t t = 0; 3 * t < xi.size(); ++t) {
        const Rational& a = xi[3 * t];
        const Rational& b = xi[3 * t + 1];
        const Rational& c = xi[3 * t + 2];
        // (0,x,-x) <- (x,0,0); (-x,0,x) <- (0,x,0); (x,-x,0) <- (0,0,x)
        if (a == 0 && b > 0)
            N[3 * t] = b;
        else if (b == 0 && c > 0)
            N[3 * t + 1] = c;
        else if (c == 0 && a > 0)
            N[3 * t + 2] = a;
    }
    return N;
}

// ---------------------------------------------------------------------------
// Vertex enumeration: for each choice of one quad type per tetrahedron, the
// extreme rays of {x >= 0, B_S x = 0} by the double description method.

namespace {

struct Ray {
    RationalVector x;
    std::vector<bool> zero;  // x_i == 0
};

Ray make_ray(RationalVector x) {
    Ray r;
    r.zero.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r.zero[i] = (x[i] == 0);
    r.x = std::move(x);
    return r;
}

std::vector<RationalVector> cone_extreme_rays(const Matrix<Rational>& M) {
    const std::size_t k = M.cols();
    std::vector<Ray> rays;
    for (std::size_t i = 0; i < k; ++i) {
        RationalVector e(k, Rational(0));
        e[i] = 1;
        rays.push_back(make_ray(std::move(e)));
    }
    for (std::size_t row = 0; row < M.rows(); ++row) {
        const RationalVector b = M.row(row);
        std::vector<Rational> val(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) val[r] = dot(b, rays[r].x);
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (val[r] == 0) next.push_back(rays[r]);
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (val[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (val[q] >= 0) continue;
                // Adjacent iff no third ray vanishes wherever both p and q vanish.
                std::vector<bool> common(k);
                for (std::size_t i = 0; i < k; ++i) common[i] = rays[p].zero[i] && rays[q].zero[i];
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    bool contains = true;
                    for (std::size_t i = 0; i < k && contains; ++i)
                        if (common[i] && !rays[r].zero[i]) contains = false;
                    if (contains) adjacent = false;
                }
                if (!adjacent) continue;
                RationalVector x(k);
                for (std::size_t i = 0; i < k; ++i) x[i] = val[p] * rays[q].x[i] - val[q] * rays[p].x[i];
                next.push_back(make_ray(std::move(x)));
            }
        }
        rays = std::move(next);
    }
    std::vector<RationalVector> out;
    for (auto& r : rays) out.push_back(std::move(r.x));
    return out;
}

}  // namespace

std::vector<IntVector> enumerate_pf_vertices(const GluingSystem& S, unsigned jobs) {
    const std::size_t n = S.tet_count;
    const Matrix<Rational> B = to_rational(S.B);
    std::size_t patterns = 1;
    for (std::size_t t = 0; t < n; ++t) patterns *= 3;

    auto work = [&](std::size_t first, std::size_t stride, std::set<IntVector>& found) {
        for (std::size_t code = first; code < patterns; code += stride) {
            std::vector<std::size_t> cols(n);
            std::size_t c = code;
            for (std::size_t t = 0; t < n; ++t) {
                cols[t] = 3 * t + c % 3;
                c /= 3;
            }
            Matrix<Rational> restricted(B.rows(), n);
            for (std::size_t r = 0; r < B.rows(); ++r)
                for (std::size_t t = 0; t < n; ++t) restricted(r, t) = B(r, cols[t]);
            for (const auto& ray : cone_extreme_rays(restricted)) {
                RationalVector full(3 * n, Rational(0));
                for (std::size_t t = 0; t < n; ++t) full[cols[t]] = ray[t];
                found.insert(primitive_integer_multiple(full).vector);
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(patterns)));
    std::vector<std::set<IntVector>> partial(workers);
    if (workers == 1) {
        work(0, 1, partial[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, workers, std::ref(partial[w]));
        for (auto& th : pool) th.join();
    }
    std::set<IntVector> merged;
    for (auto& p : partial) merged.insert(p.begin(), p.end());
    return std::vector<IntVector>(merged.rbegin(), merged.rend());
}

}  // namespace tropodegen
