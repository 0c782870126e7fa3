#include <gtest/gtest.h>

#include "dsr/cartan_weyl.hpp"

using namespace dsr;

TEST(RootData, RankOne) {
  auto d = build_type_a(1);
  EXPECT_EQ(d.cartan_matrix(0, 0), 2);
  EXPECT_NEAR(d.form_h(0, 0).real(), 2.0, 0.0);
  EXPECT_EQ(d.coxeter_number, 2);
}

TEST(RootData, RankTwo) {
  auto d = build_type_a(2);
  IMat a(2, 2);
  a << 2, -1, -1, 2;
  EXPECT_EQ(d.cartan_matrix, a);
  EXPECT_EQ(max_abs(Mat(d.form_hstar - a.cast<cd>())), 0.0);
  EXPECT_EQ(d.coxeter_number, 3);
}

TEST(RootData, RejectsRankZero) { EXPECT_THROW(build_type_a(0), std::invalid_argument); }

TEST(RootData, TraceFormReproducesFormH) {
  for (int l = 1; l <= 4; ++l) {
    auto d = build_type_a(l);
    SlAlgebra alg(l + 1);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) {
        const Mat hi = alg.h_matrix(Vec::Unit(l, i)), hj = alg.h_matrix(Vec::Unit(l, j));
        EXPECT_EQ(alg.pair(hi, hj), d.form_h(i, j));
      }
  }
}

TEST(Coxeter, RankOneIsMinusOne) {
  auto s = coxeter_operator(build_type_a(1));
  EXPECT_EQ(s.matrix(0, 0), cd(-1.0));
  EXPECT_EQ(s.word, std::vector<int>{1});
}

TEST(Coxeter, RankTwoEigenvalues) {
  auto s = coxeter_operator(build_type_a(2));
  Eigen::ComplexEigenSolver<Mat> es(s.matrix);
  const cd w = std::polar(1.0, 2 * pi / 3);
  for (int k = 0; k < 2; ++k) {
    const cd e = es.eigenvalues()(k);
    EXPECT_LT(std::min(std::abs(e - w), std::abs(e - std::conj(w))), 1e-12);
  }
}

TEST(Coxeter, OrderAndNonDegeneracy) {
  for (int l = 1; l <= 6; ++l) {
    auto d = build_type_a(l);
    auto s = coxeter_operator(d);
    Mat p = Mat::Identity(l, l);
    for (int k = 0; k < d.coxeter_number; ++k) p = p * s.matrix;
    EXPECT_EQ(max_abs(Mat(p - Mat::Identity(l, l))), 0.0) << l;
    EXPECT_GT(std::abs((s.matrix - Mat::Identity(l, l)).determinant()), 0.5) << l;
  }
}

TEST(Weyl, UnitarityOfWords) {
  for (int l = 1; l <= 4; ++l) {
    auto d = build_type_a(l);
    std::vector<int> word;
    for (int k = 0; k < 3 * l; ++k) {
      word.push_back(1 + (k * 7 + 3) % l);
      EXPECT_LE(unitarity_residual(d, weyl_word(d, word).matrix), 1e-12);
    }
  }
}

TEST(Representatives, ConjugationMatchesWeylAction) {
  for (int l = 1; l <= 4; ++l) {
    auto d = build_type_a(l);
    for (int i = 1; i <= l; ++i) {
      const Mat g = simple_representative(l + 1, i);
      EXPECT_NEAR(g.determinant().real(), 1.0, 1e-14);
      EXPECT_EQ(max_abs(Mat(conjugation_on_h(g) - simple_reflection_matrix(d, i))), 0.0);
    }
    EXPECT_LE(max_abs(Mat(conjugation_on_h(coxeter_representative(l).matrix) - coxeter_operator(d).matrix)), 1e-14);
    EXPECT_LE(max_abs(Mat(conjugation_on_h(coxeter_inverse_representative(l).matrix) -
                          coxeter_operator(d).matrix.inverse())),
              1e-14);
  }
}

TEST(Bruhat, ReassemblesAndFindsCell) {
  Mat m(3, 3);
  m << 1.0, 2.0, 0.5, 3.0, -1.0, 2.0, 0.25, 4.0, 1.5;
  auto b = bruhat_decompose(m);
  EXPECT_LE(max_abs(Mat(b.left * b.monomial * b.right - m)), 1e-12);
  EXPECT_LE(max_abs(strictly_lower(b.left)), 0.0);
  EXPECT_LE(max_abs(strictly_lower(b.right)), 0.0);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(b.left(i, i), cd(1.0));
    EXPECT_EQ(b.right(i, i), cd(1.0));
  }
}

TEST(Bruhat, RepresentativeLiesInItsOwnCoset) {
  for (int l = 1; l <= 3; ++l) {
    const Mat s = coxeter_representative(l).matrix;
    EXPECT_LE(double_coset_residual(s, s), 1e-14);
    const Mat w0 = longest_representative(l).matrix;
    EXPECT_LE(double_coset_residual(w0, w0), 1e-14);
  }
}

TEST(FElement, RankOne) {
  auto fe = build_f_element(build_type_a(1));
  EXPECT_TRUE(fe.lower_unipotent);
  EXPECT_NE(fe.f.matrix(1, 0), cd(0.0));
  EXPECT_EQ(fe.f.matrix(1, 0), cd(-1.0));
  EXPECT_TRUE(fe.in_cell);
  EXPECT_LE(fe.coset_residual, 1e-12);
}

TEST(FElement, RankTwoFrozen) {
  auto fe = build_f_element(build_type_a(2));
  Mat expect(3, 3);
  expect << 1, 0, 0, -1, 1, 0, 1, -1, 1;
  EXPECT_LE(max_abs(Mat(fe.f.matrix - expect)), 1e-14);
  EXPECT_TRUE(fe.in_cell);
  EXPECT_LE(fe.coset_residual, 1e-12);
}

TEST(FElement, UnipotentAndInCellUpToRankFive) {
  for (int l = 1; l <= 5; ++l) {
    auto fe = build_f_element(build_type_a(l));
    const int n = l + 1;
    Mat p = Mat::Identity(n, n);
    const Mat nil = fe.f.matrix - Mat::Identity(n, n);
    for (int k = 0; k < n; ++k) p = p * nil;
    EXPECT_EQ(max_abs(p), 0.0);
    EXPECT_TRUE(fe.in_cell) << l;
    EXPECT_LE(fe.coset_residual, 1e-12) << l;
    for (auto c : fe.coefficients) EXPECT_EQ(c, cd(-1.0));
  }
}

TEST(NPrime, DimensionEqualsRank) {
  for (int l = 1; l <= 6; ++l) EXPECT_EQ(int(nprime_roots(l).size()), l);
}
