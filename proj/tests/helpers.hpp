#pragma once

#include "tropodegen/triangulation.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <vector>

namespace testing_helpers {

using tropodegen::FaceGluing;
using tropodegen::Perm4;

/// Random face pairing of n tetrahedra. When `orientable`, permutation
/// parities are chosen to agree with random tetrahedron orientations.
inline std::vector<std::array<FaceGluing, 4>> random_gluings(std::size_t n, std::mt19937& rng, bool orientable) {
    std::vector<int> faces(4 * n);
    std::iota(faces.begin(), faces.end(), 0);
    std::shuffle(faces.begin(), faces.end(), rng);
    std::vector<int> o(n);
    for (auto& x : o) x = rng() % 2 ? 1 : -1;

    std::array<int, 4> id{0, 1, 2, 3};
    std::vector<Perm4> perms;
    do perms.emplace_back(id);
    while (std::next_permutation(id.begin(), id.end()));

    std::vector<std::array<FaceGluing, 4>> g(n);
    for (std::size_t k = 0; k < faces.size(); k += 2) {
        const int a = faces[k], b = faces[k + 1];
        const int ti = a / 4, fi = a % 4, tj = b / 4, fj = b % 4;
        std::vector<Perm4> ok;
        for (const auto& p : perms) {
            if (p[fi] != fj) continue;
            if (orientable && o[ti] * o[tj] * p.sign() != -1) continue;
            ok.push_back(p);
        }
        const Perm4 p = ok[rng() % ok.size()];
        g[ti][fi] = {tj, p};
        g[tj][fj] = {ti, p.inverse()};
    }
    return g;
}

}  // namespace testing_helpers
