#include "doctest.h"
#include "oracles.hpp"

#include "dmca/clustering.hpp"
#include "dmca/dictionary.hpp"
#include "dmca/errors.hpp"
#include "dmca/harvest.hpp"

#include <Eigen/QR>

using namespace dmca;

namespace {

ModeLibrary labeled_library(const Matrix& data, Index wl) {
    ModeLibrary lib = harvest(DataMatrix(data, std::nullopt, false), wl);
    label_library(lib, Labeler::two_way(0.5));
    return lib;
}

}  // namespace

TEST_CASE("neighborhood windows with boundary clamp") {
    oracle::Rand rand(1);
    const ModeLibrary lib = labeled_library(rand.complex_matrix(30, 40), 12);
    CHECK(lib.window_count() == 29);
    CHECK(neighborhood_windows(lib, 40, 2) == std::vector<Index>{27, 28, 29});
    CHECK(neighborhood_windows(lib, 5, 0) == std::vector<Index>{5});
    CHECK(neighborhood_windows(lib, 1, 1) == std::vector<Index>{1, 2});
    CHECK(neighborhood_windows(lib, 10, 2) == std::vector<Index>{8, 9, 10, 11, 12});
    CHECK_THROWS_AS(neighborhood_windows(lib, 41, 2), ParameterError);
    CHECK_THROWS_AS(neighborhood_windows(lib, 3, -1), ParameterError);
}

TEST_CASE("column dictionary contents") {
    oracle::Rand rand(2);
    const ModeLibrary lib = labeled_library(rand.complex_matrix(30, 40), 12);
    const ColumnDictionary d = build_column_dictionary(lib, 5, 0);
    CHECK(d.column == 5);
    for (Index w : d.atom_windows) CHECK(w == 5);
    for (Index a = 0; a < d.size(); ++a) CHECK(std::abs(d.atoms.col(a).norm() - 1.0) <= 1e-12);

    // atom_scales * atoms reproduces the raw modes, ordered by (window, mode).
    const ColumnDictionary e = build_column_dictionary(lib, 20, 3);
    Index a = 0;
    for (const auto& entry : lib.entries) {
        if (entry.window < 17 || entry.window > 23) continue;
        REQUIRE(a < e.size());
        CHECK(e.atom_windows[static_cast<std::size_t>(a)] == entry.window);
        CHECK(e.atom_labels[static_cast<std::size_t>(a)] == *entry.label);
        CHECK((e.atoms.col(a) * e.atom_scales[static_cast<std::size_t>(a)] - entry.vector).norm() <= 1e-12 * entry.vector.norm());
        ++a;
    }
    CHECK(a == e.size());
}

TEST_CASE("unlabeled library rejected") {
    oracle::Rand rand(3);
    const ModeLibrary lib = harvest(DataMatrix(rand.complex_matrix(8, 6), std::nullopt, false), 3);
    CHECK_THROWS_AS(build_column_dictionary(lib, 2, 1), ParameterError);
}

TEST_CASE("split_by_label") {
    ColumnDictionary d;
    d.atoms = Matrix::Identity(4, 4);
    d.atom_labels = {1, 2, 1, 2};
    d.atom_scales = {1, 1, 1, 1};
    d.atom_windows = {1, 1, 2, 2};
    const auto parts = split_by_label(d, 3);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].cols() == 2);
    CHECK(parts[1].cols() == 2);
    CHECK(parts[2].cols() == 0);
    CHECK(parts[0].col(0) == d.atoms.col(0));
    CHECK(parts[0].col(1) == d.atoms.col(2));
    CHECK(parts[1].col(1) == d.atoms.col(3));

    d.atom_labels = {1, 1, 1, 1};
    const auto single = split_by_label(d, 2);
    CHECK(single[0].cols() == 4);
    CHECK(single[1].cols() == 0);
}

TEST_CASE("coverage of interior columns on exactly-linear data") {
    oracle::Rand rand(4);
    const Index wl = 6;
    const auto snaps = oracle::linear_snapshots(40, 24, {0.99, std::polar(0.9, 0.5), std::polar(0.7, 1.9)}, true, rand);
    const ModeLibrary lib = labeled_library(snaps.data, wl);
    for (Index j = 2; j <= 24; ++j) {
        const ColumnDictionary d = build_column_dictionary(lib, j, 1);
        const auto x = snaps.data.col(j - 1);
        const Eigen::ColPivHouseholderQR<Matrix> qr(d.atoms);
        const Vector coef = qr.solve(Vector(x));
        CHECK((d.atoms * coef - x).norm() <= 1e-6 * x.norm());
    }
}
