#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "riemext/tensor.hpp"

using namespace riemext;
using fixture::P;

namespace {

IndexedTensor covector(const Chart& c, std::vector<std::string> comps) {
  IndexedTensor t(c, {Variance::Down});
  for (int i = 1; i <= c.dim(); ++i) t.set({i}, P(comps[i - 1]));
  return t;
}

}  // namespace

TEST(Chart, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(Chart::of({"x", "x"}), ShapeError);
  EXPECT_THROW(Chart(std::vector<Symbol>{}), ShapeError);
  EXPECT_EQ(Chart::of({"x", "y"}).position(Symbol("y")), 2);
}

TEST(Tensor, DenseStorageAndOneBasedIndexing) {
  IndexedTensor t(fixture::chart_of(3), {Variance::Down, Variance::Down, Variance::Up});
  EXPECT_EQ(t.size(), 27u);
  EXPECT_TRUE(t.at({3, 3, 3}).is_zero());
  EXPECT_THROW(t.at({0, 1, 1}), ShapeError);
  EXPECT_THROW(t.at({1, 1}), ShapeError);
  t.set({2, 3, 1}, 5);
  EXPECT_EQ(t.index_of(t.offset({2, 3, 1})), (Index{2, 3, 1}));
}

TEST(Tensor, TraceOfIdentityIsDimension) {
  for (int n = 1; n <= 4; ++n) {
    auto d = IndexedTensor::identity(fixture::chart_of(n));
    IndexedTensor tr = contract(d, 1, 2);
    EXPECT_EQ(tr.rank(), 0);
    EXPECT_EQ(tr.data()[0], Expr(n));
    EXPECT_EQ(contract(tensor_scale(d, 2), 1, 2).data()[0], Expr(2 * n));
  }
}

TEST(Tensor, ContractRejectsBadSlots) {
  auto d = IndexedTensor::identity(fixture::chart_of(2));
  IndexedTensor g(d.chart(), {Variance::Down, Variance::Down});
  EXPECT_THROW(contract(g, 1, 2), ShapeError);
  EXPECT_THROW(contract(d, 1, 1), ShapeError);
  EXPECT_THROW(contract(d, 1, 3), ShapeError);
}

TEST(Tensor, ContractOfZeroIsZero) {
  IndexedTensor z(fixture::chart_of(3), {Variance::Up, Variance::Down, Variance::Down});
  EXPECT_TRUE(contract(z, 1, 3).is_zero());
}

TEST(Tensor, InverseContractsToDelta) {
  auto m = fixture::sphere(2);
  IndexedTensor prod = contract(tensor_mul_outer(m.g_inv, m.g), 2, 3);
  EXPECT_EQ(prod, IndexedTensor::identity(m.chart));
}

TEST(Tensor, AddScaleOuter) {
  Chart c = Chart::of({"x", "y"});
  auto u = covector(c, {"x", "y^2"});
  auto v = covector(c, {"1/x", "x*y"});
  EXPECT_TRUE(tensor_add(u, tensor_scale(u, -1)).is_zero());
  auto uv = tensor_mul_outer(u, v);
  EXPECT_EQ(uv.at({1, 2}), P("x^2*y"));
  EXPECT_EQ(uv.variance(), (std::vector<Variance>{Variance::Down, Variance::Down}));
  IndexedTensor w(c, {Variance::Up});
  EXPECT_THROW(tensor_add(u, w), ShapeError);
}

TEST(Tensor, ContractionIsBilinear) {
  Chart c = Chart::of({"x", "y"});
  auto d = IndexedTensor::identity(c);
  IndexedTensor a(c, {Variance::Up, Variance::Down});
  IndexedTensor b(c, {Variance::Up, Variance::Down});
  a.set({1, 2}, P("x"));
  a.set({2, 2}, P("y^2"));
  b.set({1, 1}, P("1/(x+1)"));
  b.set({2, 1}, P("3"));
  auto lhs = contract(tensor_add(a, b), 1, 2);
  auto rhs = tensor_add(contract(a, 1, 2), contract(b, 1, 2));
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(contract(tensor_add(d, a), 1, 2).data()[0], P("2 + y^2"));
}

TEST(Tensor, LowerThenRaiseIsIdentity) {
  auto m = fixture::sphere(2);
  IndexedTensor t(m.chart, {Variance::Up, Variance::Down});
  t.set({1, 1}, P("x*y"));
  t.set({2, 1}, P("1/(1+y^2)"));
  t.set({1, 2}, P("x"));
  auto lowered = lower_index(t, 1, m);
  EXPECT_EQ(lowered.variance(1), Variance::Down);
  EXPECT_EQ(raise_index(lowered, 1, m), t);
  EXPECT_THROW(lower_index(t, 2, m), ShapeError);
}

TEST(Tensor, LowerIntoTargetSlot) {
  Chart c = Chart::of({"x", "y"});
  IndexedTensor t(c, {Variance::Up, Variance::Down, Variance::Down});
  t.set({1, 2, 1}, P("x"));
  IndexedTensor g(c, {Variance::Down, Variance::Down});
  g.set({1, 1}, 2);
  g.set({2, 2}, 3);
  // T_{a b k} = g_{m k} T^m_{a b} with the lowered index moved to slot 3.
  auto low = lower_index(t, 1, g, 3);
  EXPECT_EQ(low.at({2, 1, 1}), P("2*x"));
  EXPECT_TRUE(low.at({1, 2, 1}).is_zero());
}

TEST(Tensor, MapComponents) {
  Chart c = Chart::of({"x", "y"});
  auto u = covector(c, {"x + t", "y"});
  auto v = covector(c, {"x", "y"});
  Symbol t("t");
  EXPECT_TRUE(derive(v, t).is_zero());
  EXPECT_EQ(map_components(u, [&](const Expr& e) { return substitute(e, {{t, 0}}); }), v);
  EXPECT_EQ(map_components(u, [](const Expr& e) { return normalize(e); }), u);
}

TEST(Tensor, SymmetryAssertions) {
  Chart c = Chart::of({"x", "y"});
  IndexedTensor g(c, {Variance::Down, Variance::Down});
  g.set({1, 2}, P("x"));
  g.set({2, 1}, P("x"));
  EXPECT_NO_THROW(assert_symmetric(g, 1, 2));
  EXPECT_THROW(assert_antisymmetric(g, 1, 2), SymmetryError);
  g.set({2, 1}, P("y"));
  EXPECT_THROW(assert_symmetric(g, 1, 2), SymmetryError);
  IndexedTensor f(c, {Variance::Down, Variance::Down});
  f.set({1, 2}, P("x"));
  f.set({2, 1}, P("-x"));
  EXPECT_TRUE(is_antisymmetric(f, 1, 2));
  f.set({1, 1}, 1);
  EXPECT_FALSE(is_antisymmetric(f, 1, 2));
}

TEST(Tensor, JsonDumpOmitsZeros) {
  auto m = fixture::hyperbolic_plane();
  auto j = to_json(m.g);
  EXPECT_EQ(j.dump(),
            R"({"variance":["down","down"],"dim":2,"components":{"[1,1]":"1/y^2","[2,2]":"1/y^2"}})");
}

TEST(Tensor, ZeroTestNamesComponent) {
  Chart c = Chart::of({"x", "y"});
  IndexedTensor t(c, {Variance::Down, Variance::Down});
  EXPECT_TRUE(is_zero(t).is_zero());
  t.set({2, 1}, P("x - 1/2"));
  auto v = is_zero(t);
  EXPECT_EQ(v.verdict, Verdict::NonZero);
  EXPECT_EQ(v.location, "[2,1]");
}
