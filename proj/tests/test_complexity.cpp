#include <doctest.h>

#include <random>

#include "danc/complexity.hpp"

using namespace danc;

namespace {

const std::vector<AlgorithmKind> kAll{AlgorithmKind::cfxlms, AlgorithmKind::dcfxlms, AlgorithmKind::mdfxlms,
                                      AlgorithmKind::bdfxlms_bc};

std::uint64_t ref_mul(const char* name) {
  for (const auto& r : reference_counts())
    if (std::string(r.algorithm) == name) return r.mul;
  return 0;
}

}  // namespace

TEST_CASE("reference table ordering") {
  CHECK(ref_mul("DCFxLMS") < ref_mul("MDFxLMS"));
  CHECK(ref_mul("MDFxLMS") < ref_mul("BDFxLMS-BC"));
  CHECK(ref_mul("BDFxLMS-BC") < ref_mul("CFxLMS"));
}

TEST_CASE("model on the 10-node ring") {
  const auto ring = Topology::ring(10);
  const ComplexityDims d{10, 260, 64};
  const auto cf = op_count_model(AlgorithmKind::cfxlms, d, ring);
  CHECK(std::abs(relative_deviation(cf.mul, 63600)) <= 0.2);
  CHECK(std::abs(relative_deviation(cf.add, 60790)) <= 0.2);
  // Hand-summed ledger for the centralized update.
  CHECK(cf.mul == 2600 + 6400 + 26000 + 20 + 26000);
  CHECK(cf.add == 2590 + 6300 + 25900 + 100 + 26000);

  for (auto conv : {CountConvention::direct, CountConvention::sliding}) {
    std::vector<std::uint64_t> m;
    for (auto k : {AlgorithmKind::dcfxlms, AlgorithmKind::mdfxlms, AlgorithmKind::bdfxlms_bc, AlgorithmKind::cfxlms})
      m.push_back(op_count_model(k, d, ring, conv).mul);
    CHECK(m[0] < m[1]);
    CHECK(m[1] < m[2]);
    CHECK(m[2] < m[3]);
  }
  CHECK(op_count_model(AlgorithmKind::bdfxlms_bc, d, ring, CountConvention::sliding).mul < 23628);
}

TEST_CASE("ledger lines add up") {
  const auto ring = Topology::ring(7);
  for (auto k : kAll)
    for (auto conv : {CountConvention::direct, CountConvention::sliding}) {
      const auto c = op_count_model(k, {7, 13, 5}, ring, conv);
      std::uint64_t m = 0, a = 0;
      for (const auto& l : c.ledger) {
        m += l.mul;
        a += l.add;
      }
      CHECK(m == c.mul);
      CHECK(a == c.add);
    }
}

TEST_CASE("one node: centralized and decentralized counts coincide") {
  const auto one = Topology::ring(1);
  for (auto conv : {CountConvention::direct, CountConvention::sliding})
    for (auto norm : {CentralNorm::stacked, CentralNorm::block}) {
      const auto cf = op_count_model(AlgorithmKind::cfxlms, {1, 16, 4}, one, conv, norm);
      const auto dc = op_count_model(AlgorithmKind::dcfxlms, {1, 16, 4}, one, conv);
      CHECK(cf.mul == dc.mul);
      CHECK(cf.add == dc.add);
    }
}

TEST_CASE("monotone in every dimension and in neighborhood size") {
  for (auto k : kAll)
    for (auto conv : {CountConvention::direct, CountConvention::sliding}) {
      auto at = [&](std::size_t J, std::size_t I, std::size_t H, const Topology& t) {
        return op_count_model(k, {J, I, H}, t, conv);
      };
      for (std::size_t J = 2; J < 8; ++J) {
        const auto base = at(J, 10, 4, Topology::ring(J));
        const auto moreJ = at(J + 1, 10, 4, Topology::ring(J + 1));
        const auto moreI = at(J, 11, 4, Topology::ring(J));
        const auto moreH = at(J, 10, 5, Topology::ring(J));
        const auto denser = at(J, 10, 4, Topology::complete(J));
        for (const auto* o : {&moreJ, &moreI, &moreH, &denser}) {
          CHECK(o->mul >= base.mul);
          CHECK(o->add >= base.add);
        }
      }
    }
}

TEST_CASE("instrumented counts equal the direct model") {
  CHECK(instrumented_run(AlgorithmKind::dcfxlms, {2, 4, 2}, Topology::ring(2), 7).mul ==
        op_count_model(AlgorithmKind::dcfxlms, {2, 4, 2}, Topology::ring(2)).mul);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> J(1, 6), I(1, 12), H(1, 6);
  std::bernoulli_distribution link(0.5);
  for (int t = 0; t < 12; ++t) {
    const std::size_t j = J(rng);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < j; ++a)
      for (std::size_t b = a + 1; b < j; ++b)
        if (link(rng)) edges.emplace_back(a, b);
    const auto topo = Topology::from_edges(j, edges);
    const ComplexityDims d{j, I(rng), H(rng)};
    for (auto k : kAll)
      for (auto norm : {CentralNorm::stacked, CentralNorm::block}) {
        const auto model = op_count_model(k, d, topo, CountConvention::direct, norm);
        const auto meas = instrumented_run(k, d, topo, 9, 100 + t, norm);
        CHECK(meas.mul == model.mul);
        CHECK(meas.add == model.add);
      }
  }
}

TEST_CASE("instrumented edge cases") {
  const auto ring = Topology::ring(3);
  for (auto k : kAll) {
    const auto c = instrumented_run(k, {3, 4, 2}, ring, 0);
    CHECK(c.mul == 0);
    CHECK(c.add == 0);
  }
  CHECK(instrumented_run(AlgorithmKind::cfxlms, {3, 4, 2}, ring, 5).mul >
        instrumented_run(AlgorithmKind::dcfxlms, {3, 4, 2}, ring, 5).mul);
}
