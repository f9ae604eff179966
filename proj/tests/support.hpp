#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crloop/exactmath/matrix.hpp"
#include "crloop/exactmath/rational.hpp"
#include "crloop/loop/loop.hpp"
#include "crloop/loop/parser.hpp"

namespace crl::testing {

inline std::filesystem::path corpus_dir() { return CRLOOP_CORPUS_DIR; }

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Loop corpus_loop(const std::string& name) { return parse_loop(read_file(corpus_dir() / name)); }

inline std::vector<std::filesystem::path> corpus_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(corpus_dir()))
        if (e.path().extension() == ".loop") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

struct ManifestEntry {
    std::string file;
    bool constant = false;
    std::size_t bound = 0;
};

inline std::vector<ManifestEntry> read_manifest() {
    std::vector<ManifestEntry> out;
    std::istringstream in(read_file(corpus_dir() / "manifest.csv"));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        ManifestEntry e;
        e.file = cols.at(0);
        e.constant = cols.at(1) == "CONSTANT";
        if (e.constant) e.bound = std::stoul(cols.at(2));
        out.push_back(e);
    }
    return out;
}

inline Rational random_rational(std::mt19937_64& rng, long range = 20, long max_den = 8) {
    std::uniform_int_distribution<long> num(-range, range), den(1, max_den);
    return Rational(mpz_class(num(rng)), mpz_class(den(rng)));
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t d) {
    Vector v;
    for (std::size_t i = 0; i < d; ++i) v.push_back(random_rational(rng));
    return v;
}

inline std::vector<std::string> var_names(std::size_t d) {
    static const char* names[] = {"x", "y", "w", "u", "v"};
    return {names, names + d};
}

// Random unimodular matrix (product of elementary row additions), so
// conjugating by it keeps entries integral and the spectrum unchanged.
inline std::pair<Matrix, Matrix> random_unimodular(std::mt19937_64& rng, std::size_t d) {
    Matrix p = identity_matrix(d), pinv = identity_matrix(d);
    std::uniform_int_distribution<std::size_t> idx(0, d - 1);
    std::uniform_int_distribution<long> mult(-1, 1);
    for (int step = 0; step < 2 && d > 1; ++step) {
        std::size_t i = idx(rng), j = idx(rng);
        long k = mult(rng);
        if (i == j || k == 0) continue;
        Matrix e = identity_matrix(d), einv = identity_matrix(d);
        e[i][j] = Rational(k);
        einv[i][j] = Rational(-k);
        p = e * p;
        pinv = pinv * einv;
    }
    return {p, pinv};
}

// Random block upper triangular matrix of size d whose eigenvalues are real
// and non-negative. Diagonal entries come from {0, 1/2, 1, 3/2, 2, 3}; with
// irrational=true a 2x2 block with a non-square positive discriminant is
// placed on the diagonal when d >= 2.
inline Matrix random_nonneg_spectrum_matrix(std::mt19937_64& rng, std::size_t d, bool irrational) {
    static const Rational diag[] = {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2),
                                    Rational(3)};
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_int_distribution<long> off(-2, 2);
    Matrix a(d, Vector(d, Rational(0)));
    std::size_t start = 0;
    if (irrational && d >= 2) {
        // [[1, 1], [1, 2]] and [[2, 1], [1, 1]]: eigenvalues (3 +- sqrt 5)/2.
        bool flip = pick(rng) % 2;
        a[0][0] = Rational(flip ? 2 : 1);
        a[0][1] = Rational(1);
        a[1][0] = Rational(1);
        a[1][1] = Rational(flip ? 1 : 2);
        start = 2;
    }
    for (std::size_t i = start; i < d; ++i) a[i][i] = diag[pick(rng)];
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = std::max(i + 1, start); j < d; ++j) a[i][j] = Rational(off(rng));
    auto [p, pinv] = random_unimodular(rng, d);
    return p * a * pinv;
}

inline Loop random_loop(std::mt19937_64& rng, std::size_t d, bool irrational) {
    Loop l;
    l.vars = var_names(d);
    l.A = random_nonneg_spectrum_matrix(rng, d, irrational);
    std::uniform_int_distribution<long> small(-3, 3);
    for (std::size_t i = 0; i < d; ++i) l.b.push_back(Rational(small(rng)));
    Inequation q;
    for (const auto& v : l.vars) q.term.add(v, Rational(small(rng)));
    q.term.constant = Rational(small(rng));
    l.guard.conjuncts.push_back(q);
    return l;
}

}  // namespace crl::testing
