#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "autorb/linalg.hpp"

using namespace autorb;

namespace {

Mat random_mat(const Field& f, int r, int c, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, f.q() - 1);
  Mat m(f, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.set(i, j, pick(rng));
  return m;
}

Mat random_invertible(const Field& f, int n, std::mt19937& rng) {
  while (true) {
    Mat m = random_mat(f, n, n, rng);
    if (m.invertible()) return m;
  }
}

}  // namespace

TEST_CASE("products over gf2 and gf4") {
  const Field& f2 = Field::get(2, 1);
  Mat a = Mat::from_rows(f2, {{1, 1}, {0, 1}});
  Mat b = Mat::from_rows(f2, {{1, 0}, {1, 1}});
  CHECK(a * b == Mat::from_rows(f2, {{0, 1}, {1, 1}}));

  const Field& f4 = Field::get(2, 2);
  Mat j = Mat::from_rows(f4, {{1, 1}, {0, 1}});
  CHECK((j * j).is_identity());
  Mat y = Mat::from_rows(f4, {{2, 3, 0}, {1, 0, 2}});
  CHECK(Mat::identity(f4, 2) * y == y);
}

TEST_CASE("inverse") {
  const Field& f4 = Field::get(2, 2);
  CHECK(Mat::identity(f4, 3).inverse().is_identity());
  Mat j = Mat::from_rows(f4, {{1, 1}, {0, 1}});
  CHECK(j.inverse() == j);
  CHECK_THROWS_AS(Mat(f4, 2, 2).inverse(), singular_error);

  std::mt19937 rng(7);
  for (int q : {4, 7}) {
    const Field& f = Field::get_order(q);
    for (int t = 0; t < 50; ++t) {
      Mat m = random_invertible(f, 3, rng);
      CHECK((m.inverse() * m).is_identity());
      CHECK((m * m.inverse()).is_identity());
    }
  }
}

TEST_CASE("rank") {
  const Field& f4 = Field::get(2, 2);
  CHECK(Mat(f4, 2, 5).rank() == 0);
  Mat r1(f4, 2, 3);
  r1.set(0, 0, 1);
  CHECK(r1.rank() == 1);
  Mat r2(f4, 2, 3);
  r2.set(0, 0, 1);
  r2.set(1, 1, 1);
  CHECK(r2.rank() == 2);
}

TEST_CASE("determinant") {
  const Field& f4 = Field::get(2, 2);
  CHECK(Mat::identity(f4, 2).det() == 1);
  CHECK(Mat::from_rows(f4, {{1, 1}, {0, 1}}).det() == 1);
  CHECK(Mat::from_rows(f4, {{2, 0}, {0, 3}}).det() == 1);  // w * w^2 = 1
  CHECK_THROWS_AS(Mat(f4, 2, 3).det(), dim_error);
}

TEST_CASE("det is multiplicative, exhaustive over gf2 2x2") {
  const Field& f = Field::get(2, 1);
  std::vector<Mat> all;
  for (int c = 0; c < 16; ++c) {
    Mat m(f, 2, 2);
    m.set(0, 0, c & 1);
    m.set(0, 1, (c >> 1) & 1);
    m.set(1, 0, (c >> 2) & 1);
    m.set(1, 1, (c >> 3) & 1);
    all.push_back(m);
  }
  for (const auto& a : all)
    for (const auto& b : all)
      CHECK((a * b).det() == f.mul(a.det(), b.det()));
}

TEST_CASE("det multiplicative and rank submultiplicative, randomized gf4") {
  const Field& f = Field::get(2, 2);
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    Mat a = random_mat(f, 3, 3, rng);
    Mat b = random_mat(f, 3, 3, rng);
    CHECK((a * b).det() == f.mul(a.det(), b.det()));
    CHECK((a * b).rank() <= std::min(a.rank(), b.rank()));
  }
}

TEST_CASE("arithmetic shape and field errors") {
  const Field& f4 = Field::get(2, 2);
  const Field& f8 = Field::get(2, 3);
  Mat a(f4, 2, 3), b(f4, 2, 3), c(f8, 3, 2);
  CHECK_THROWS_AS(a * b, dim_error);
  CHECK_THROWS_AS(a * c, field_error);
  CHECK(a + b == Mat(f4, 2, 3));
}

TEST_CASE("transpose and frobenius") {
  const Field& f4 = Field::get(2, 2);
  Mat m = Mat::from_rows(f4, {{2, 1}, {0, 3}});
  CHECK(m.transposed() == Mat::from_rows(f4, {{2, 0}, {1, 3}}));
  CHECK(m.frobenius() == Mat::from_rows(f4, {{3, 1}, {0, 2}}));
  CHECK(m.frobenius(2) == m);
  CHECK(m.str() == "[[w,1],[0,w2]]");
}

TEST_CASE("rank normal decomposition") {
  std::mt19937 rng(13);
  const Field& f = Field::get(2, 2);
  for (int t = 0; t < 200; ++t) {
    int m = 1 + t % 5;
    Mat a = random_mat(f, 2, m, rng);
    auto [e, fc] = rank_normal_decomposition(a);
    CHECK(e.invertible());
    CHECK(fc.invertible());
    Mat r = (e * a) * fc;
    int rank = a.rank();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < m; ++j)
        CHECK(r.at(i, j) == ((i == j && i < rank) ? 1 : 0));
  }
}

TEST_CASE("complete to invertible") {
  const Field& f = Field::get(2, 2);
  Mat w = complete_to_invertible(f, {0, 2, 3});
  CHECK(w.invertible());
  CHECK(w.at(0, 0) == 0);
  CHECK(w.at(0, 1) == 2);
  CHECK(w.at(0, 2) == 3);
  // first_row * w^-1 = e1
  Mat row(f, 1, 3);
  row.set(0, 1, 2);
  row.set(0, 2, 3);
  Mat e1 = row * w.inverse();
  CHECK(e1.at(0, 0) == 1);
  CHECK(e1.at(0, 1) == 0);
  CHECK(e1.at(0, 2) == 0);
  CHECK_THROWS_AS(complete_to_invertible(f, {0, 0}), structure_error);
}
