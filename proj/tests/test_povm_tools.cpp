#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "runitary/channel.hpp"
#include "runitary/povm.hpp"
#include "runitary/random.hpp"

using namespace runitary;

namespace {

Matrix povm_sum(const RankOnePovm& p) {
  Matrix s = Matrix::Zero(p.r, p.r);
  for (const Vector& a : p.vectors) s += a * a.adjoint();
  return s;
}

RankOnePovm coisometry_povm(int r, int n, std::mt19937_64& rng) {
  const Matrix m = oracles::random_coisometry(r, n, rng);
  std::vector<Vector> cols;
  for (int i = 0; i < n; ++i) cols.push_back(m.col(i));
  return make_povm(r, std::move(cols));
}

}  // namespace

TEST_CASE("make_povm prunes and validates") {
  std::vector<Vector> vs;
  Vector a(2), tiny(2);
  a << 1.0, 0.0;
  tiny << 1e-9, 0.0;
  vs = {a, tiny, a};
  const RankOnePovm p = make_povm(2, vs);
  CHECK(p.size() == 2);  // tiny squared norm 1e-18 is pruned

  CHECK_THROWS_AS(make_povm(0, vs), std::invalid_argument);
  CHECK_THROWS_AS(make_povm(3, vs), std::invalid_argument);  // length mismatch
  CHECK_THROWS_AS(make_povm(2, std::vector<Vector>{tiny}), std::invalid_argument);
}

TEST_CASE("validate_povm checks completeness") {
  const auto trine = oracles::trine_vectors();
  CHECK(validate_povm(make_povm(2, trine)));

  auto broken = trine;
  broken.pop_back();
  CHECK_FALSE(validate_povm(make_povm(2, broken)));
}

TEST_CASE("trine POVM is extremal") {
  const RankOnePovm p = make_povm(2, oracles::trine_vectors());
  CHECK(is_extremal(p));
  CHECK_FALSE(find_null_combination(p).has_value());
  CHECK(oracles::gram_rank(p.vectors) == 3);
}

TEST_CASE("orthonormal basis POVM is extremal") {
  std::mt19937_64 rng(3);
  const Matrix u = haar_unitary(3, rng);
  std::vector<Vector> vs;
  for (int i = 0; i < 3; ++i) vs.push_back(u.col(i));
  CHECK(is_extremal(make_povm(3, vs)));
}

TEST_CASE("more than r^2 elements is never extremal") {
  std::mt19937_64 rng(5);
  const RankOnePovm p = coisometry_povm(2, 5, rng);
  REQUIRE(validate_povm(p));
  CHECK_FALSE(is_extremal(p));
  const auto c = find_null_combination(p);
  REQUIRE(c.has_value());
  CHECK(c->size() == 5);
  CHECK(std::abs(c->cwiseAbs().maxCoeff() - 1.0) < 1e-12);
  Matrix zero = Matrix::Zero(2, 2);
  for (int i = 0; i < 5; ++i) zero += (*c)(i) * p.vectors[i] * p.vectors[i].adjoint();
  CHECK(zero.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("extremality matches the gram-matrix oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 2 + static_cast<int>(rng() % 2);
    const int n = r + static_cast<int>(rng() % (r * r));
    RankOnePovm p = coisometry_povm(r, n, rng);
    if (trial % 3 == 0 && p.size() >= 2) {
      // plant a dependency: duplicate one direction in two halves
      p.vectors[0] = p.vectors[1] * 0.7;
      p = make_povm(r, p.vectors);  // no longer complete, still a valid test set
    }
    const bool lib = is_extremal(p);
    const bool oracle = oracles::gram_rank(p.vectors) == p.size();
    CHECK(lib == oracle);
    CHECK(lib == !find_null_combination(p).has_value());
  }
}

TEST_CASE("split of a duplicated basis POVM lands at lambda one half") {
  const double s = 1.0 / std::sqrt(2.0);
  Vector e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  const RankOnePovm p = make_povm(2, {s * e0, s * e1, s * e0, s * e1});
  REQUIRE(validate_povm(p));
  CHECK_FALSE(is_extremal(p));

  RealVector c(4);
  c << 1, 0, -1, 0;  // copies of e0 cancel
  const SplitOnce split = extremal_split_once(p, c);
  CHECK(split.lambda == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(split.p.size() == 3);
  CHECK(split.q.size() == 3);
  // element 2 leaves the plus branch, element 0 leaves the minus branch
  CHECK(std::find(split.p_support.begin(), split.p_support.end(), 2) == split.p_support.end());
  CHECK(std::find(split.q_support.begin(), split.q_support.end(), 0) == split.q_support.end());
  CHECK(validate_povm(split.p));
  CHECK(validate_povm(split.q));
}

TEST_CASE("extremal_split_once reconstructs the parent") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const RankOnePovm p = coisometry_povm(2, 6, rng);
    const auto c = find_null_combination(p);
    REQUIRE(c.has_value());
    const SplitOnce split = extremal_split_once(p, *c);
    CHECK(split.lambda > 0.0);
    CHECK(split.lambda < 1.0);
    CHECK(split.p.size() < p.size());
    CHECK(split.q.size() < p.size());
    CHECK(validate_povm(split.p));
    CHECK(validate_povm(split.q));

    // lambda * P + (1 - lambda) * Q equals the parent element by element
    std::vector<Matrix> acc(p.size(), Matrix::Zero(2, 2));
    for (int t = 0; t < split.p.size(); ++t)
      acc[split.p_support[t]] +=
          split.lambda * split.p.vectors[t] * split.p.vectors[t].adjoint();
    for (int t = 0; t < split.q.size(); ++t)
      acc[split.q_support[t]] +=
          (1.0 - split.lambda) * split.q.vectors[t] * split.q.vectors[t].adjoint();
    for (int i = 0; i < p.size(); ++i) {
      const Matrix orig = p.vectors[i] * p.vectors[i].adjoint();
      CHECK((acc[i] - orig).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("extremal_split_once rejects a one-signed combination") {
  const RankOnePovm p = make_povm(2, oracles::trine_vectors());
  RealVector c(3);
  c << 1, 1, 1;
  CHECK_THROWS_AS(extremal_split_once(p, c), std::runtime_error);
}

TEST_CASE("extremal_decompose leaves an extremal POVM alone") {
  const RankOnePovm p = make_povm(2, oracles::trine_vectors());
  const ExtremalSplit es = extremal_decompose(p);
  REQUIRE(es.components.size() == 1);
  CHECK(es.weights[0] == doctest::Approx(1.0));
  CHECK(es.components[0].size() == 3);
  CHECK(es.support_maps[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("extremal_decompose splits into extremal pieces that reconstruct") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    const int r = 2 + trial % 2;
    const int n = r * r + 2 + trial;
    const RankOnePovm p = coisometry_povm(r, n, rng);
    REQUIRE(validate_povm(p));
    const ExtremalSplit es = extremal_decompose(p);
    REQUIRE(!es.components.empty());

    double wsum = 0.0;
    std::vector<double> scale(p.size(), 0.0);
    for (size_t k = 0; k < es.components.size(); ++k) {
      wsum += es.weights[k];
      CHECK(es.weights[k] > 0.0);
      const RankOnePovm& comp = es.components[k];
      CHECK(comp.size() <= r * r);
      CHECK(is_extremal(comp));
      CHECK(validate_povm(comp));
      REQUIRE(es.support_maps[k].size() == static_cast<size_t>(comp.size()));
      for (int t = 0; t < comp.size(); ++t) {
        const int orig = es.support_maps[k][t];
        REQUIRE(orig >= 0);
        REQUIRE(orig < p.size());
        // component elements stay parallel to the original direction
        const Vector& a = comp.vectors[t];
        const Vector& b = p.vectors[orig];
        const Complex ip = b.dot(a);
        CHECK((a - ip / b.squaredNorm() * b).norm() < 1e-9 * a.norm());
        scale[orig] += es.weights[k] * a.squaredNorm() / b.squaredNorm();
      }
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
    for (int i = 0; i < p.size(); ++i) CHECK(scale[i] == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("dice condition on a canonical pauli channel") {
  const KrausChannel pauli = oracles::pauli_channel(0.4, 0.3, 0.2, 0.1);
  const KrausChannel can = choi_to_canonical_kraus(kraus_to_choi(pauli));
  REQUIRE(can.num_ops() == 4);

  std::vector<Vector> basis;
  for (int i = 0; i < 4; ++i) {
    Vector e = Vector::Zero(4);
    e(i) = 1.0;
    basis.push_back(e);
  }
  const auto probs = check_dice_condition(can, make_povm(4, basis));
  REQUIRE(probs.has_value());
  REQUIRE(probs->size() == 4);
  // canonical order sorts the choi eigenvalues descending
  CHECK((*probs)[0] == doctest::Approx(0.4).epsilon(1e-10));
  CHECK((*probs)[1] == doctest::Approx(0.3).epsilon(1e-10));
  CHECK((*probs)[2] == doctest::Approx(0.2).epsilon(1e-10));
  CHECK((*probs)[3] == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("dice condition fails for a non-unital channel basis POVM") {
  const KrausChannel can =
      choi_to_canonical_kraus(kraus_to_choi(oracles::amplitude_damping(0.4)));
  std::vector<Vector> basis;
  for (int i = 0; i < can.num_ops(); ++i) {
    Vector e = Vector::Zero(can.num_ops());
    e(i) = 1.0;
    basis.push_back(e);
  }
  CHECK_FALSE(check_dice_condition(can, make_povm(can.num_ops(), basis)).has_value());
}

TEST_CASE("dice condition rejects mismatched dimensions") {
  const KrausChannel can =
      choi_to_canonical_kraus(kraus_to_choi(oracles::depolarizing_qubit()));
  CHECK_THROWS_AS(check_dice_condition(can, make_povm(2, oracles::trine_vectors())),
                  std::invalid_argument);
}

TEST_CASE("dice probabilities survive duplication with phases") {
  const KrausChannel can =
      choi_to_canonical_kraus(kraus_to_choi(oracles::pauli_channel(0.4, 0.3, 0.2, 0.1)));
  std::vector<Vector> vs;
  for (int copy = 0; copy < 2; ++copy)
    for (int i = 0; i < 4; ++i) {
      Vector e = Vector::Zero(4);
      e(i) = std::polar(1.0 / std::sqrt(2.0), 0.37 * (i + 4 * copy));
      vs.push_back(e);
    }
  const RankOnePovm p = make_povm(4, vs);
  REQUIRE(validate_povm(p));
  const auto probs = check_dice_condition(can, p);
  REQUIRE(probs.has_value());
  double total = 0.0;
  for (double q : *probs) total += q;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  CHECK((*probs)[0] == doctest::Approx(0.2).epsilon(1e-10));
  CHECK((*probs)[4] == doctest::Approx(0.2).epsilon(1e-10));

  // the duplicated POVM is not extremal; splitting drops the duplicates and
  // the dice condition survives on every leaf
  const ExtremalSplit es = extremal_decompose(p);
  for (const RankOnePovm& comp : es.components) {
    CHECK(comp.size() <= 16);
    CHECK(check_dice_condition(can, comp).has_value());
  }
}
