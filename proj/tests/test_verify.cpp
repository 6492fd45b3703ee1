#include <doctest.h>

#include <cmath>

#include "wbench/io.hpp"
#include "wbench/verify.hpp"

using namespace wbench;

namespace {

ExperimentConfig small_cfg() {
    ExperimentConfig cfg;
    cfg.resolutions = {128, 256};
    cfg.trials = 12;
    cfg.block_sides = {4, 8, 16};
    cfg.seed = 4242;
    return cfg;
}

} // namespace

TEST_CASE("weight descriptors") {
    GridSpec g{1, 2.0, 64};
    Weight c = weight_from_descriptor("const")(g);
    CHECK(c.at(0) == 1.0);
    Weight c2 = weight_from_descriptor("const:2.5")(g);
    CHECK(c2.at(10) == 2.5);
    Weight pw = weight_from_descriptor("power:0.3")(g);
    Weight pw2 = power_weight(g, 0.3);
    for (int i = 0; i < g.N; ++i) CHECK(pw.at(i) == pw2.at(i));
    Weight st = weight_from_descriptor("step:1:3")(g);
    CHECK(st.at(0) == 1.0);
    CHECK(st.at(63) == 3.0);
    CHECK_NOTHROW(weight_from_descriptor("builtin:const")(g));
    CHECK_THROWS(weight_from_descriptor("nope:1"));
}

TEST_CASE("hypothesis gates") {
    ExperimentConfig cfg = small_cfg();
    GateStatus ok = evaluate_gates(cfg, false);
    CHECK(ok.ok);
    CHECK(ok.violations.empty());
    CHECK(ok.r_w_unbounded); // |x|^0.3 is tame
    CHECK(ok.aplus > 0);

    // q >= p breaks the exponent ordering.
    ExperimentConfig bad = cfg;
    bad.q = 2.5;
    GateStatus g1 = evaluate_gates(bad, false);
    CHECK(!g1.ok);
    CHECK(!g1.violations.empty());

    // The molecule route needs s > p/q on top.
    ExperimentConfig tight = cfg;
    tight.s = 1.2;
    tight.q = 1.9;
    GateStatus g2 = evaluate_gates(tight, true);
    CHECK(!g2.ok);
}

TEST_CASE("random blocks respect their contract") {
    GridSpec g{1, 2.0, 256};
    auto w = std::make_shared<const Weight>(power_weight(g, 0.3));
    std::mt19937_64 rng = substream(7, 3);
    for (int t = 0; t < 40; ++t) {
        Block b = random_block(rng, g, w, 2.0, 8.0, {4, 8, 16, 32}, t % 2 == 0);
        int side = side_cells(g, b.support);
        CHECK((side == 4 || side == 8 || side == 16 || side == 32));
        CHECK(cube_in_domain(g, b.support));
        // Vanishes outside the support.
        for (int i = 0; i < g.N; ++i)
            if (!cube_contains_cell(g, b.support, i)) CHECK(b.samples.at(i) == 0.0);
        // Saturates the size bound (skip the degenerate zero draw).
        double ns = ls_norm(b.samples, 8.0);
        if (ns == 0) continue;
        double cap = std::pow(cube_volume(g, b.support), 1.0 / 8.0) /
                     std::pow(w->mass(b.support), 0.5);
        CHECK(ns == doctest::Approx(cap).epsilon(1e-9));
    }
}

TEST_CASE("random fields are mixtures, never zero") {
    GridSpec g{1, 2.0, 128};
    std::mt19937_64 rng = substream(7, 4);
    for (int t = 0; t < 20; ++t) {
        GridFunction f = random_field(rng, g, t % 2 == 0);
        CHECK(gf_max_abs(f) > 0);
    }
}

TEST_CASE("experiments are deterministic in config and seed") {
    ExperimentConfig cfg = small_cfg();
    OperatorHandle id = make_operator("identity");
    BoundReport a = uniform_block_bound(id, cfg);
    BoundReport b = uniform_block_bound(id, cfg);
    REQUIRE(a.rows.size() == b.rows.size());
    CHECK(csv_text(a.columns, a.rows) == csv_text(b.columns, b.rows));
    CHECK(a.sup == b.sup);
    CHECK(a.stability == b.stability);
}

TEST_CASE("experiments are thread count independent") {
    ExperimentConfig cfg = small_cfg();
    OperatorHandle op = make_operator("hilbert:h");
    set_threads(1);
    BoundReport a = decomposition_inequality(op, cfg);
    set_threads(4);
    BoundReport b = decomposition_inequality(op, cfg);
    set_threads(0);
    CHECK(csv_text(a.columns, a.rows) == csv_text(b.columns, b.rows));
}

TEST_CASE("block bound experiment shape") {
    ExperimentConfig cfg = small_cfg();
    BoundReport r = uniform_block_bound(make_operator("identity"), cfg);
    CHECK(r.pass);
    CHECK(r.sup > 0);
    CHECK(r.sup <= 1.0 + 1e-9); // identity on a block: Holder gives exactly <= 1
    CHECK(r.per_resolution.size() == 2);
    CHECK(!r.per_scale.empty());
    CHECK(r.stability >= 1.0);
    // One row per (rung, trial).
    CHECK(r.rows.size() == 2 * 12);
}

TEST_CASE("whitney experiment invariants") {
    ExperimentConfig cfg = small_cfg();
    cfg.trials = 8;
    BoundReport r = whitney_check(cfg);
    CHECK(r.pass);
    CHECK(r.sup > 0);
    CHECK(!r.notes.empty());
}

TEST_CASE("duality experiment pins the single block ratio") {
    ExperimentConfig cfg = small_cfg();
    cfg.trials = 10;
    BoundReport r = duality_check(cfg);
    CHECK(r.pass);
    // kind column: 0 single, 1 multi; singles obey the exact inequality.
    double single_sup = 0;
    for (const auto& row : r.rows)
        if (row[2] == 0.0) single_sup = std::max(single_sup, row[3]);
    CHECK(single_sup <= 1.0 + 1e-9);
}

TEST_CASE("sharpness study fits the known growth") {
    ExperimentConfig cfg;
    cfg.sharpness_L = {4, 8, 16, 32};
    cfg.cells_per_unit = 16;
    cfg.trials = 10;
    cfg.resolutions = {256};
    BoundReport r = sharpness_study(cfg);
    // L1 mass of M chi over [-L, L] is 2 + log L + log(1+L): slope vs log L
    // lands near 2 (it would be exactly 2 for 2 log L).
    CHECK(r.slope > 1.6);
    CHECK(r.slope < 2.3);
    CHECK(r.pass);

    ExperimentConfig bad = cfg;
    bad.cells_per_unit = 7; // 7 * 2L is never a power of two
    CHECK_THROWS(sharpness_study(bad));
}

TEST_CASE("empty experiment degenerates cleanly") {
    ExperimentConfig cfg = small_cfg();
    cfg.trials = 0;
    BoundReport r = uniform_block_bound(make_operator("identity"), cfg);
    CHECK(r.pass);
    CHECK(r.rows.empty());
}
