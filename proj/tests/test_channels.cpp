#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "petzlab/channel_json.hpp"
#include "petzlab/channels.hpp"

using namespace petzlab;
using Catch::Matchers::WithinAbs;

namespace {

const std::vector<double> kPGrid = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};

double min_eigenvalue(const Cmat &m) {
  return eig_hermitian(m).values[0];
}

}  // namespace

TEST_CASE("channel constructors", "[channels]") {
  SECTION("Kraus entries of dephasing") {
    const QuantumChannel ch = dephasing(0.3);
    REQUIRE(ch.kraus.size() == 2);
    REQUIRE_THAT(ch.kraus[0](0, 0).real(),
                 WithinAbs(std::sqrt(0.85), 1e-14));
    REQUIRE_THAT(ch.kraus[1](0, 0).real(),
                 WithinAbs(std::sqrt(0.15), 1e-14));
    REQUIRE_THAT(ch.kraus[1](1, 1).real(),
                 WithinAbs(-std::sqrt(0.15), 1e-14));
  }

  SECTION("Kraus entries of amplitude damping") {
    const QuantumChannel ch = amplitude_damping(0.36);
    REQUIRE_THAT(ch.kraus[0](1, 1).real(), WithinAbs(0.8, 1e-14));
    REQUIRE_THAT(ch.kraus[1](0, 1).real(), WithinAbs(0.6, 1e-14));
  }

  SECTION("trace preservation across the p grid") {
    for (const double p : kPGrid) {
      CAPTURE(p);
      REQUIRE(trace_preservation_defect(dephasing(p)) < 1e-10);
      REQUIRE(trace_preservation_defect(depolarizing(p)) < 1e-10);
      REQUIRE(trace_preservation_defect(amplitude_damping(p)) < 1e-10);
    }
  }

  SECTION("out-of-range probability is rejected") {
    REQUIRE_THROWS_AS(dephasing(-0.01), std::invalid_argument);
    REQUIRE_THROWS_AS(depolarizing(1.01), std::invalid_argument);
    REQUIRE_THROWS_AS(amplitude_damping(std::nan("")), std::invalid_argument);
  }

  SECTION("make_channel rejects non-trace-preserving sets") {
    REQUIRE_THROWS_AS(make_channel({0.5 * Cmat::identity(2)}, "broken"),
                      std::invalid_argument);
  }
}

TEST_CASE("channel action", "[channels]") {
  SECTION("dephasing shrinks coherences by 1 - p") {
    const DensityMatrix out = apply(dephasing(0.4), plus_state());
    REQUIRE_THAT(out.mat()(0, 1).real(), WithinAbs(0.5 * 0.6, 1e-14));
    REQUIRE_THAT(out.mat()(0, 0).real(), WithinAbs(0.5, 1e-14));
  }

  SECTION("depolarizing shrinks the whole Bloch vector") {
    const DensityMatrix out = apply(depolarizing(0.4), plus_state());
    const auto b = out.bloch_vector();
    REQUIRE_THAT(b[0], WithinAbs(0.6, 1e-14));
    REQUIRE_THAT(b[1], WithinAbs(0.0, 1e-14));
    REQUIRE_THAT(b[2], WithinAbs(0.0, 1e-14));
  }

  SECTION("amplitude damping decays the excited state") {
    const DensityMatrix out = apply(amplitude_damping(0.25), ket1_state());
    REQUIRE_THAT(out.mat()(0, 0).real(), WithinAbs(0.25, 1e-14));
    REQUIRE_THAT(out.mat()(1, 1).real(), WithinAbs(0.75, 1e-14));
  }

  SECTION("full amplitude damping resets everything to |0>") {
    for (const DensityMatrix &rho :
         {ket1_state(), plus_state(), maximally_mixed()}) {
      const DensityMatrix out = apply(amplitude_damping(1.0), rho);
      REQUIRE(max_abs_diff(out.mat(), ket0_state().mat()) < 1e-14);
    }
  }

  SECTION("unitality: dephasing and depolarizing fix I/2, damping does not") {
    for (const double p : kPGrid) {
      CAPTURE(p);
      REQUIRE(trace_distance(apply(dephasing(p), maximally_mixed()),
                             maximally_mixed()) < 1e-12);
      REQUIRE(trace_distance(apply(depolarizing(p), maximally_mixed()),
                             maximally_mixed()) < 1e-12);
      REQUIRE_THAT(trace_distance(apply(amplitude_damping(p), maximally_mixed()),
                                  maximally_mixed()),
                   WithinAbs(0.5 * p, 1e-10));
    }
  }

  SECTION("outputs are valid states") {
    oracles::MatrixGen gen(42);
    for (int rep = 0; rep < 20; ++rep) {
      const DensityMatrix rho = DensityMatrix::from_matrix(gen.density(2));
      for (const auto &ch :
           {dephasing(0.37), depolarizing(0.61), amplitude_damping(0.83)}) {
        const DensityMatrix out = apply(ch, rho);
        CAPTURE(rep, ch.label);
        REQUIRE_NOTHROW(DensityMatrix::from_matrix(out.mat()));
      }
    }
  }
}

TEST_CASE("dual maps", "[channels]") {
  SECTION("dephasing and depolarizing are self-dual") {
    REQUIRE(maps_equal(dual(dephasing(0.45)), dephasing(0.45)));
    REQUIRE(maps_equal(dual(depolarizing(0.7)), depolarizing(0.7)));
  }

  SECTION("dual of a channel is unital") {
    for (const double p : {0.2, 0.8}) {
      const KrausMap d = dual(amplitude_damping(p));
      const Cmat img = apply_map(d, Cmat::identity(2));
      CAPTURE(p);
      REQUIRE(max_abs_diff(img, Cmat::identity(2)) < 1e-12);
    }
  }

  SECTION("double dual returns the original map") {
    const QuantumChannel ch = amplitude_damping(0.3);
    REQUIRE(maps_equal(dual(dual(ch)), ch));
  }
}

TEST_CASE("composition", "[channels]") {
  SECTION("two dephasings multiply their coherence factors") {
    const KrausMap both = compose(dephasing(0.3), dephasing(0.5));
    REQUIRE(both.kraus.size() == 4);
    const Cmat out = apply_map(both, plus_state().mat());
    REQUIRE_THAT(out(0, 1).real(), WithinAbs(0.5 * 0.7 * 0.5, 1e-14));
    REQUIRE(maps_equal(both, dephasing(1.0 - 0.7 * 0.5)));
  }

  SECTION("composition preserves trace preservation") {
    const KrausMap c = compose(amplitude_damping(0.4), depolarizing(0.2));
    REQUIRE(trace_preservation_defect(c) < 1e-12);
  }

  SECTION("identity composes neutrally") {
    const QuantumChannel ch = amplitude_damping(0.6);
    REQUIRE(maps_equal(compose(identity_channel(), ch), ch));
    REQUIRE(maps_equal(compose(ch, identity_channel()), ch));
  }
}

TEST_CASE("Choi matrices", "[channels]") {
  SECTION("dephasing: corners carry the coherence factor") {
    const ChoiMatrix j = choi(dephasing(0.4));
    REQUIRE_THAT(j.mat(0, 0).real(), WithinAbs(0.5, 1e-14));
    REQUIRE_THAT(j.mat(3, 3).real(), WithinAbs(0.5, 1e-14));
    REQUIRE_THAT(j.mat(0, 3).real(), WithinAbs(0.5 * 0.6, 1e-14));
    REQUIRE_THAT(j.mat(1, 1).real(), WithinAbs(0.0, 1e-14));
  }

  SECTION("fully depolarizing: Choi is I/4") {
    const ChoiMatrix j = choi(fully_depolarizing());
    REQUIRE(max_abs_diff(j.mat, cplx(0.25, 0.0) * Cmat::identity(4)) < 1e-14);
  }

  SECTION("matches the definition-chasing construction") {
    for (const auto &ch :
         {dephasing(0.33), depolarizing(0.77), amplitude_damping(0.52)}) {
      CAPTURE(ch.label);
      REQUIRE(max_abs_diff(choi(ch).mat, oracles::choi_by_definition(ch)) <
              1e-13);
    }
  }

  SECTION("complete positivity and trace across the p grid") {
    for (const double p : kPGrid) {
      for (const auto &ch :
           {dephasing(p), depolarizing(p), amplitude_damping(p)}) {
        const ChoiMatrix j = choi(ch);
        CAPTURE(p, ch.label);
        REQUIRE(j.mat.is_hermitian(1e-12));
        REQUIRE(min_eigenvalue(j.mat) > -1e-10);
        REQUIRE_THAT(j.mat.trace().real(), WithinAbs(1.0, 1e-12));
        // Trace preservation shows as a maximally mixed first marginal.
        REQUIRE(max_abs_diff(partial_trace_second(j.mat),
                             cplx(0.5, 0.0) * Cmat::identity(2)) < 1e-12);
      }
    }
  }
}

TEST_CASE("superoperators", "[channels]") {
  SECTION("dephasing is diagonal in the vec basis") {
    const Cmat s = superoperator(dephasing(0.3));
    const Cmat expect = [] {
      Cmat m(4);
      m(0, 0) = 1.0;
      m(1, 1) = 0.7;
      m(2, 2) = 0.7;
      m(3, 3) = 1.0;
      return m;
    }();
    REQUIRE(max_abs_diff(s, expect) < 1e-14);
  }

  SECTION("matches the action on basis matrices") {
    for (const auto &ch :
         {dephasing(0.41), depolarizing(0.27), amplitude_damping(0.66),
          compose(amplitude_damping(0.3), dephasing(0.8))}) {
      CAPTURE(ch.label);
      REQUIRE(max_abs_diff(superoperator(ch),
                           oracles::superoperator_by_action(ch)) < 1e-13);
    }
  }

  SECTION("superoperator reproduces apply on random states") {
    oracles::MatrixGen gen(5);
    const QuantumChannel ch = amplitude_damping(0.45);
    const Cmat s = superoperator(ch);
    for (int rep = 0; rep < 10; ++rep) {
      const Cmat rho = gen.density(2);
      const Cmat direct = apply_map(ch, rho);
      // vec index i + 2j for entry (i, j).
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          cplx v = 0.0;
          for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t l = 0; l < 2; ++l)
              v += s(i + 2 * j, k + 2 * l) * rho(k, l);
          CAPTURE(rep, i, j);
          REQUIRE(std::abs(v - direct(i, j)) < 1e-13);
        }
    }
  }

  SECTION("maps_equal distinguishes nearby channels") {
    REQUIRE(maps_equal(dephasing(0.3), dephasing(0.3)));
    REQUIRE_FALSE(maps_equal(dephasing(0.3), dephasing(0.3 + 1e-6)));
  }
}

TEST_CASE("channel serialization", "[channels]") {
  SECTION("round trip preserves the map") {
    for (const auto &ch :
         {dephasing(0.25), depolarizing(0.5), amplitude_damping(0.75)}) {
      const KrausMap back = kraus_map_from_string(kraus_map_to_string(ch));
      CAPTURE(ch.label);
      REQUIRE(back.label == ch.label);
      REQUIRE(back.dim() == 2);
      REQUIRE(maps_equal(back, ch, 1e-12));
      REQUIRE(trace_preservation_defect(back) < 1e-10);
    }
  }

  SECTION("file round trip") {
    const std::string path = "channel_roundtrip_test.json";
    write_kraus_map(path, amplitude_damping(0.42));
    const KrausMap back = read_kraus_map(path);
    REQUIRE(maps_equal(back, amplitude_damping(0.42), 1e-12));
    std::remove(path.c_str());
  }

  SECTION("malformed input is rejected") {
    REQUIRE_THROWS(kraus_map_from_string("{\"dim\": 2}"));
    REQUIRE_THROWS(kraus_map_from_string(
        "{\"dim\": 2, \"kraus\": [[[[1,0]],[[0,0]]]]}"));
    REQUIRE_THROWS(kraus_map_from_string("not json"));
  }
}
