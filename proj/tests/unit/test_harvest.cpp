#include "doctest.h"
#include "oracles.hpp"

#include "dmca/dmd.hpp"
#include "dmca/errors.hpp"
#include "dmca/harvest.hpp"

#include <set>
#include <sstream>

using namespace dmca;

TEST_CASE("window_count") {
    CHECK(window_count(40, 12) == 29);
    CHECK(window_count(25, 8) == 18);
    CHECK(window_count(5, 5) == 1);
    CHECK_THROWS_AS(window_count(5, 6), ParameterError);
    CHECK_THROWS_AS(window_count(5, 1), ParameterError);
}

TEST_CASE("index arithmetic n=10, w_L=8") {
    oracle::Rand rand(1);
    const DataMatrix x(rand.complex_matrix(20, 10), std::nullopt, false);
    const ModeLibrary lib = harvest(x, 8);
    CHECK(lib.window_count() == 3);
    CHECK(lib.entries.size() <= 21);
    std::set<Index> windows;
    for (const auto& e : lib.entries) {
        windows.insert(e.window);
        CHECK(e.mode >= 1);
        CHECK(e.mode <= 7);
    }
    CHECK(windows == std::set<Index>{1, 2, 3});
}

TEST_CASE("constant video gives eigenvalue 1 in every window") {
    const DataMatrix x = DataMatrix::from_real(RealMatrix::Constant(9, 7, 4.0));
    const ModeLibrary lib = harvest(x, 4);
    REQUIRE(lib.entries.size() == 4);
    for (const auto& e : lib.entries) CHECK(std::abs(e.eigenvalue - 1.0) <= 1e-12);
}

TEST_CASE("rank-zero windows contribute nothing") {
    RealMatrix v = RealMatrix::Zero(4, 6);
    v.col(5).setOnes();
    const ModeLibrary lib = harvest(DataMatrix::from_real(v), 3);
    // Windows 1..3 have an all-zero X1 block; window 4 sees columns 4..6.
    for (const auto& e : lib.entries) CHECK(e.window == 4);
}

TEST_CASE("eigen table") {
    oracle::Rand rand(2);
    const Vector v = rand.complex_matrix(5, 1);
    Matrix x(5, 6);
    for (int t = 0; t < 6; ++t) x.col(t) = v * std::pow(2.0, t);
    const ModeLibrary lib = harvest(DataMatrix(x, std::nullopt, false), 3);
    const auto rows = eigen_table(lib);
    CHECK(rows.size() == lib.entries.size());
    for (const auto& r : rows) {
        CHECK(r.mag2 == doctest::Approx(4.0).epsilon(1e-10));
        CHECK(r.label == 0);
    }
    std::ostringstream out;
    write_eigen_csv(out, rows);
    CHECK(out.str().rfind("window,re,im,mag2,arg,label\n", 0) == 0);
}

TEST_CASE("per-window reconstruction on exactly-linear data") {
    oracle::Rand rand(3);
    const auto snaps = oracle::linear_snapshots(25, 16, {0.95, std::polar(0.8, 0.7), std::polar(1.0, 2.0)}, true, rand);
    const ModeLibrary lib = harvest(DataMatrix(snaps.data.real().cast<Scalar>(), std::nullopt, true), 8);
    for (Index j = 1; j <= lib.window_count(); ++j) {
        DmdResult r;
        std::vector<Scalar> lam, amp;
        std::vector<Vector> modes;
        for (const auto& e : lib.entries) {
            if (e.window != j) continue;
            lam.push_back(e.eigenvalue);
            amp.push_back(e.amplitude);
            modes.push_back(e.vector);
        }
        for (Index k = 1; k <= 8; ++k) {
            Vector rec = Vector::Zero(25);
            for (std::size_t i = 0; i < lam.size(); ++i) rec += modes[i] * (std::pow(lam[i], static_cast<double>(k - 1)) * amp[i]);
            const auto col = snaps.data.col(j + k - 2);
            CHECK((rec - col).norm() <= 1e-6 * col.norm());
        }
    }
}

TEST_CASE("determinism, thread independence and shift consistency") {
    oracle::Rand rand(4);
    const Matrix data = rand.complex_matrix(12, 14);
    const DataMatrix x(data, std::nullopt, false);
    const ModeLibrary a = harvest(x, 5);
    const ModeLibrary b = harvest(x, 5, {1, 3});
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].window == b.entries[i].window);
        CHECK(a.entries[i].eigenvalue == b.entries[i].eigenvalue);
        CHECK(a.entries[i].vector == b.entries[i].vector);
    }
    const Index s = 3;
    const DataMatrix shifted(Matrix(data.rightCols(14 - s)), std::nullopt, false);
    const ModeLibrary c = harvest(shifted, 5);
    for (const auto& e : c.entries) {
        const auto match = std::find_if(a.entries.begin(), a.entries.end(), [&](const ModeEntry& f) {
            return f.window == e.window + s && f.mode == e.mode;
        });
        REQUIRE(match != a.entries.end());
        CHECK(match->eigenvalue == e.eigenvalue);
        CHECK(match->vector == e.vector);
    }
}
