#include "stresskit/errors.hpp"
#include "stresskit/rng.hpp"
#include "stresskit/rqa.hpp"

#include "support/naive_det.hpp"
#include "support/synthetic.hpp"
#include "support/testutil.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

using namespace stresskit;

namespace {

std::vector<std::uint8_t> random_symmetric(std::size_t q, double density, std::uint64_t seed) {
    synth::Rng rng(seed);
    std::vector<std::uint8_t> cells(q * q, 0);
    for (std::size_t i = 0; i + 1 < q; ++i) {
        for (std::size_t j = i + 1; j < q; ++j) {
            if (rng.unit() < density) {
                cells[i * q + j] = 1;
                cells[j * q + i] = 1;
            }
        }
    }
    return cells;
}

} // namespace

TEST_CASE("delay embedding unrolls lagged coordinates") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
    SUBCASE("m=2 l=1") {
        const auto vs = takens_embed(x, 2, 1);
        REQUIRE(vs.size() == 4);
        CHECK(vs[0] == std::vector<double>{1.0, 2.0});
        CHECK(vs[3] == std::vector<double>{4.0, 5.0});
    }
    SUBCASE("m=3 l=2 leaves a single vector") {
        const auto vs = takens_embed(x, 3, 2);
        REQUIRE(vs.size() == 1);
        CHECK(vs[0] == std::vector<double>{1.0, 3.0, 5.0});
    }
    SUBCASE("m=1 keeps every sample regardless of l") {
        const auto vs = takens_embed(x, 1, 3);
        REQUIRE(vs.size() == 5);
        CHECK(vs[2] == std::vector<double>{3.0});
    }
    SUBCASE("invalid parameters and too-short windows") {
        CHECK_THROWS_AS((void)takens_embed(x, 0, 1), ConfigError);
        CHECK_THROWS_AS((void)takens_embed(x, 2, 0), ConfigError);
        const std::vector<double> tiny = {1.0, 2.0, 3.0, 4.0};
        CHECK_THROWS_AS((void)takens_embed(tiny, 3, 2), Error); // reach 4 >= size 4
    }
}

TEST_CASE("identical vectors give the flagged fully recurrent matrix") {
    const std::vector<std::vector<double>> vs = {{1.5, 2.5}, {1.5, 2.5}};
    const RecurrenceMatrix rp = recurrence_matrix(vs, 0.6);
    CHECK(rp.fully_recurrent);
    CHECK(rp.epsilon == 0.0);
    CHECK(rp.at(0, 1));
    CHECK(rp.at(1, 0));
    CHECK_FALSE(rp.at(0, 0));
    CHECK(det(rp, 2) == 1.0); // exactly, by definition
}

TEST_CASE("threshold at 0.6 of the mean distance separates near from far") {
    // 1-D vectors 0,1,2,5: the six pairwise distances 1,2,1,5,4,3 average
    // 8/3, so epsilon = 1.6 admits the two unit gaps and nothing else.
    const std::vector<std::vector<double>> vs = {{0.0}, {1.0}, {2.0}, {5.0}};
    const RecurrenceMatrix rp = recurrence_matrix(vs, 0.6);
    CHECK(rp.epsilon == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(rp.at(0, 1));
    CHECK(rp.at(1, 2));
    CHECK_FALSE(rp.at(0, 2));
    CHECK_FALSE(rp.at(2, 3));
    CHECK(rp.recurrence_points() == 4);
    REQUIRE(rp.diag_hist.size() > 2);
    CHECK(rp.diag_hist[2] == 2); // the first off-diagonal holds one run of 2
    CHECK(det(rp, 2) == 1.0);
}

TEST_CASE("exact period-4 signal recurs only at multiples of its period") {
    std::vector<double> x(24);
    for (std::size_t i = 0; i < x.size(); ++i) {
        switch (i % 4) {
        case 0: x[i] = 0.0; break;
        case 1: x[i] = 1.0; break;
        case 2: x[i] = 0.0; break;
        default: x[i] = -1.0; break;
        }
    }
    const RecurrenceMatrix rp = recurrence_matrix(takens_embed(x, 2, 1), 0.6);
    REQUIRE(rp.size == 23);
    CHECK_FALSE(rp.fully_recurrent);
    for (std::size_t i = 0; i < rp.size; ++i)
        for (std::size_t j = 0; j < rp.size; ++j) {
            const bool expect = i != j && (i % 4) == (j % 4);
            CHECK(rp.at(i, j) == expect);
        }
    // Recurrent diagonals are whole border-truncated runs: lags 4,8,...,20.
    CHECK(rp.diag_hist[19] == 2);
    CHECK(rp.diag_hist[15] == 2);
    CHECK(rp.diag_hist[11] == 2);
    CHECK(rp.diag_hist[7] == 2);
    CHECK(rp.diag_hist[3] == 2);
    CHECK(rp.recurrence_points() == 2 * (19 + 15 + 11 + 7 + 3));
    CHECK(det(rp, 2) == 1.0);
}

TEST_CASE("isolated recurrence points are entirely non-deterministic") {
    std::vector<std::uint8_t> cells(16, 0);
    cells[0 * 4 + 2] = 1;
    cells[2 * 4 + 0] = 1;
    const RecurrenceMatrix rp = recurrence_from_cells(4, cells);
    CHECK(rp.recurrence_points() == 2);
    CHECK(rp.diag_hist[1] == 2);
    CHECK(det(rp, 2) == 0.0);
}

TEST_CASE("adopted matrices are validated") {
    CHECK_THROWS_AS((void)recurrence_from_cells(1, {0}), Error);
    CHECK_THROWS_AS((void)recurrence_from_cells(2, {0, 1, 1}), Error); // wrong buffer size
    CHECK_THROWS_AS((void)recurrence_from_cells(2, {1, 0, 0, 0}), Error); // self-recurrence
    CHECK_THROWS_AS((void)recurrence_from_cells(2, {0, 1, 0, 0}), Error); // asymmetric
    const RecurrenceMatrix rp = recurrence_from_cells(2, {0, 7, 7, 0}, 0.5);
    CHECK(rp.at(0, 1)); // nonzero normalizes to one
    CHECK(rp.epsilon == 0.5);
    CHECK_FALSE(rp.fully_recurrent);
}

TEST_CASE("determinism matches an independent full-matrix scan exactly") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        synth::Rng pick(seed * 3571);
        const std::size_t q = 2 + pick.next() % 199; // up to 200
        const double density = 0.02 + 0.48 * pick.unit();
        const int j_min = 2 + static_cast<int>(pick.next() % 3);
        auto cells = random_symmetric(q, density, seed * 11);
        const RecurrenceMatrix rp = recurrence_from_cells(q, cells);
        const auto ref = naive::det(cells, q, j_min);
        if (!ref.has_value()) {
            CHECK_THROWS_AS((void)det(rp, j_min), UndefinedDetError);
        } else {
            CHECK(det(rp, j_min) == *ref); // both are one int64/int64 division
        }
    }
}

TEST_CASE("diagonal histogram accounts for every recurrence point") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto vals = synth::gaussian(120, seed * 17);
        const RecurrenceMatrix rp = recurrence_matrix(takens_embed(vals, 2, 1), 0.6);
        std::int64_t mass = 0;
        for (std::size_t j = 1; j < rp.diag_hist.size(); ++j)
            mass += static_cast<std::int64_t>(j) * rp.diag_hist[j];
        CHECK(mass == rp.recurrence_points());
    }
}

TEST_CASE("recurrence sets grow with the threshold fraction") {
    const auto vals = synth::gaussian(150, 99);
    const auto vectors = takens_embed(vals, 2, 1);
    const RecurrenceMatrix lo = recurrence_matrix(vectors, 0.3);
    const RecurrenceMatrix hi = recurrence_matrix(vectors, 0.9);
    REQUIRE(lo.size == hi.size);
    CHECK(lo.recurrence_points() < hi.recurrence_points());
    for (std::size_t i = 0; i < lo.size; ++i)
        for (std::size_t j = 0; j < lo.size; ++j)
            if (lo.at(i, j))
                CHECK(hi.at(i, j));
}

TEST_CASE("recurrence matrices are symmetric with an empty identity line") {
    const auto vals = synth::gaussian(100, 7);
    const RecurrenceMatrix rp = recurrence_matrix(takens_embed(vals, 3, 2), 0.6);
    for (std::size_t i = 0; i < rp.size; ++i) {
        CHECK_FALSE(rp.at(i, i));
        for (std::size_t j = 0; j < rp.size; ++j)
            CHECK(rp.at(i, j) == rp.at(j, i));
    }
}

TEST_CASE("matrix and determinism inputs are validated") {
    const std::vector<std::vector<double>> one = {{1.0}};
    CHECK_THROWS_AS((void)recurrence_matrix(one, 0.6), Error);
    const std::vector<std::vector<double>> ragged = {{1.0}, {1.0, 2.0}};
    CHECK_THROWS_AS((void)recurrence_matrix(ragged, 0.6), Error);
    const std::vector<std::vector<double>> ok = {{0.0}, {1.0}, {2.0}};
    CHECK_THROWS_AS((void)recurrence_matrix(ok, 0.0), ConfigError);
    CHECK_THROWS_AS((void)recurrence_matrix(ok, 1.0), ConfigError);
    CHECK_THROWS_AS((void)det(recurrence_matrix(ok, 0.6), 1), ConfigError);
}

TEST_CASE("grid search criterion is the minimum over single-point probes") {
    std::vector<double> window(200);
    synth::Rng rng(4242);
    for (std::size_t i = 0; i < window.size(); ++i)
        window[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 25.0) +
                    0.3 * rng.gauss();

    RqaConfig cfg;
    cfg.selection = EmbeddingSelection::automatic;
    const std::uint64_t seed = 777;
    const EmbeddingChoice full = select_embedding(window, cfg, seed);
    REQUIRE(full.m >= cfg.grid_m_lo);
    REQUIRE(full.m <= cfg.grid_m_hi);
    REQUIRE(full.l >= cfg.grid_l_lo);
    REQUIRE(full.l <= cfg.grid_l_hi);

    // The surrogate ensemble depends only on (seed, window length), so a
    // grid collapsed to one point reproduces that point's criterion bitwise.
    EmbeddingChoice manual;
    bool found = false;
    for (int m = cfg.grid_m_lo; m <= cfg.grid_m_hi; ++m)
        for (int l = cfg.grid_l_lo; l <= cfg.grid_l_hi; ++l) {
            RqaConfig point = cfg;
            point.grid_m_lo = point.grid_m_hi = m;
            point.grid_l_lo = point.grid_l_hi = l;
            const EmbeddingChoice probe = select_embedding(window, point, seed);
            CHECK(probe.m == m);
            CHECK(probe.l == l);
            CHECK(probe.criterion >= full.criterion);
            if (m == full.m && l == full.l)
                CHECK(probe.criterion == full.criterion);
            if (!found || probe.criterion < manual.criterion) {
                manual = probe;
                found = true;
            }
        }
    CHECK(manual.m == full.m);
    CHECK(manual.l == full.l);
    CHECK(manual.criterion == full.criterion);
}

TEST_CASE("white noise selects the smallest embedding dimension") {
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto window = synth::gaussian(500, seed * 131);
        RqaConfig cfg;
        cfg.selection = EmbeddingSelection::automatic;
        const EmbeddingChoice choice = select_embedding(window, cfg, seed);
        if (choice.m == 2)
            ++hits;
    }
    // Structure-free data must not reward extra dimensions; the additive
    // penalty has to dominate estimator noise nearly always.
    CHECK(hits >= 18);
}

TEST_CASE("rolling determinism ranks a sine above noise") {
    RqaConfig cfg; // fixed m=2 l=1
    std::vector<double> sine_vals = synth::sine(600, 25.0, 5.0);
    for (auto& v : sine_vals)
        v += 100.0;
    std::vector<double> noise_vals = synth::gaussian(600, 1234, 100.0, 3.0);

    const StressSeries sine = rolling_det(synth::prices(sine_vals, "S"), cfg, 300, 50);
    const StressSeries noise = rolling_det(synth::prices(noise_vals, "N"), cfg, 300, 50);
    REQUIRE(sine.size() == 7);
    REQUIRE(noise.size() == 7);
    for (std::size_t i = 0; i < sine.size(); ++i) {
        REQUIRE(sine.values[i].has_value());
        REQUIRE(noise.values[i].has_value());
        CHECK(*sine.values[i] > 0.95);
        CHECK(*noise.values[i] < *sine.values[i]);
    }
}

TEST_CASE("rolling determinism dates windows at their last sample") {
    const PriceSeries s = synth::prices(synth::gaussian(400, 5, 100.0, 2.0));
    RqaConfig cfg;
    const StressSeries out = rolling_det(s, cfg, 300, 25);
    REQUIRE(out.size() == 5);
    for (std::size_t w = 0; w < out.size(); ++w)
        CHECK(out.dates[w] == s.dates[w * 25 + 299]);
    CHECK(out.measure == Measure::det);
    CHECK(out.instrument_id == s.instrument_id);
}

TEST_CASE("constant windows become gaps in the rolling output") {
    std::vector<double> vals(400, 50.0);
    for (std::size_t i = 350; i < 400; ++i)
        vals[i] = 50.0 + 0.5 * static_cast<double>(i - 350);
    const PriceSeries s = synth::prices(vals);
    const StressSeries out = rolling_det(s, RqaConfig{}, 300, 50);
    REQUIRE(out.size() == 3);
    CHECK_FALSE(out.values[0].has_value()); // zero variance
    CHECK(out.gap_count() >= 1);
}

TEST_CASE("automatic selection is reproducible and schedule independent") {
    const PriceSeries s = synth::prices(synth::gaussian(500, 88, 100.0, 4.0));
    RqaConfig cfg;
    cfg.selection = EmbeddingSelection::automatic;
    const StressSeries a = rolling_det(s, cfg, 300, 40, 99, 1);
    const StressSeries b = rolling_det(s, cfg, 300, 40, 99, 4);
    const StressSeries c = rolling_det(s, cfg, 300, 40, 99, 1);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == c.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.values[i] == b.values[i]);
        CHECK(a.values[i] == c.values[i]);
        if (a.values[i]) {
            CHECK(*a.values[i] >= 0.0);
            CHECK(*a.values[i] <= 1.0);
        }
    }
}

TEST_CASE("rolling driver rejects unusable geometry") {
    const PriceSeries s = synth::prices(synth::gaussian(400, 21, 100.0, 2.0));
    RqaConfig cfg;
    CHECK_THROWS_AS((void)rolling_det(s, cfg, 10, 50), ConfigError);
    CHECK_THROWS_AS((void)rolling_det(s, cfg, 300, 0), ConfigError);
    CHECK_THROWS_AS((void)rolling_det(s, cfg, 500, 50), Error); // longer than the series
    cfg.epsilon_fraction = 1.5;
    CHECK_THROWS_AS((void)rolling_det(s, cfg, 300, 50), ConfigError);
}

TEST_CASE("recurrence plots serialize as binary PGM") {
    std::vector<std::uint8_t> cells(9, 0);
    cells[0 * 3 + 1] = 1;
    cells[1 * 3 + 0] = 1;
    const RecurrenceMatrix rp = recurrence_from_cells(3, cells);
    testutil::TempDir dir("pgm");
    const auto file = dir.file("rp.pgm");
    write_pgm(rp, file);
    const std::string bytes = testutil::read_file(file);
    const std::string expected = std::string("P5\n3 3\n255\n") +
                                 '\xFF' + '\x00' + '\xFF' +
                                 '\x00' + '\xFF' + '\xFF' +
                                 '\xFF' + '\xFF' + '\xFF';
    CHECK(bytes == expected);
}
