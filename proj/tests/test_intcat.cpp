#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "coproc/intcat.hpp"
#include "oracles.hpp"

using namespace coproc;
using namespace coproc::intcat;

namespace {

using RelMor = IntMor<RelInstance>;
using RelObj = IntObj<RelInstance>;

FinRel rel(std::size_t s, std::size_t t, std::initializer_list<std::pair<std::size_t, std::size_t>> edges) {
  FinRel r(s, t);
  for (auto [i, j] : edges) r.set(i, j);
  return r;
}

FinRel load_traced(const std::string& name, const Blocks& k) {
  std::ifstream in(std::string(COPROC_SAMPLES) + "/" + name);
  return parse_traced_rel(in, k);
}

// Composite of Int morphisms by following a token through both boxes.
// Rows of f: A- then B+; columns: B- then A+. Likewise for g over B, C.
FinRel compose_by_paths(const RelMor& f, const RelMor& g) {
  const std::size_t am = f.dom.minus, ap = f.dom.plus, bm = f.cod.minus, bp = f.cod.plus;
  const std::size_t cm = g.cod.minus, cp = g.cod.plus;
  FinRel out(am + cp, cm + ap);
  // State: (box, row). Box 0 is f, 1 is g.
  auto run = [&](std::size_t start_box, std::size_t start_row, std::size_t out_row) {
    std::set<std::pair<int, std::size_t>> seen;
    std::vector<std::pair<int, std::size_t>> work{{static_cast<int>(start_box), start_row}};
    seen.insert(work.back());
    auto push = [&](int box, std::size_t row) {
      if (seen.insert({box, row}).second) work.push_back({box, row});
    };
    while (!work.empty()) {
      const auto [box, row] = work.back();
      work.pop_back();
      if (box == 0) {
        for (std::size_t c = 0; c < bm + ap; ++c) {
          if (!f.base.at(row, c)) continue;
          if (c < bm) push(1, c);           // into g's B- row
          else out.set(out_row, cm + (c - bm));  // A+ exit
        }
      } else {
        for (std::size_t c = 0; c < cm + bp; ++c) {
          if (!g.base.at(row, c)) continue;
          if (c < cm) out.set(out_row, c);  // C- exit
          else push(0, am + (c - cm));      // back into f's B+ row
        }
      }
    }
  };
  for (std::size_t i = 0; i < am; ++i) run(0, i, i);
  for (std::size_t i = 0; i < cp; ++i) run(1, bm + i, am + i);
  return out;
}

RelMor random_mor(std::mt19937_64& rng, RelObj a, RelObj b, double p = 0.3) {
  return RelMor(a, b, oracle::random_rel(rng, a.minus + b.plus, b.minus + a.plus, p));
}

RelObj random_obj(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, 2);
  return {d(rng), d(rng)};
}

}  // namespace

TEST(FinRel, Basics) {
  const FinRel id = FinRel::identity(3);
  EXPECT_EQ(id.pairs().size(), 3u);
  EXPECT_TRUE(FinRel(2, 2).empty());
  EXPECT_THROW(id.at(3, 0), InputError);
}

TEST(RelCompose, Examples) {
  const FinRel f = rel(2, 2, {{0, 1}});
  const FinRel g = rel(2, 3, {{1, 2}});
  EXPECT_EQ(rel_compose(f, g), rel(2, 3, {{0, 2}}));
  EXPECT_EQ(rel_compose(g.block(0, 2, 0, 2), f), FinRel(2, 2));
  EXPECT_EQ(rel_compose(FinRel::identity(2), f), f);
  EXPECT_THROW(rel_compose(g, f), InputError);
}

TEST(RelStar, Chain) {
  const FinRel step = rel(3, 3, {{0, 1}, {1, 2}});
  EXPECT_EQ(rel_star(step), rel(3, 3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}, {0, 2}}));
}

TEST(RelTrace, Examples) {
  const Blocks k{1, 1, 1};
  EXPECT_EQ(rel_trace(load_traced("trace_chain.rel", k), k), rel(1, 1, {{0, 0}}));
  EXPECT_TRUE(rel_trace(load_traced("trace_stuck.rel", k), k).empty());
  EXPECT_THROW(rel_trace(FinRel(2, 2), Blocks{1, 2, 1}), InputError);
}

TEST(RelTrace, MatchesPathSearch) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::size_t> d(0, 4);
  for (int i = 0; i < 300; ++i) {
    const Blocks k{d(rng), d(rng), d(rng)};
    const FinRel f = oracle::random_rel(rng, k.a + k.y, k.b + k.y, 0.3);
    EXPECT_EQ(rel_trace(f, k), oracle::trace_by_search(f, k));
  }
}

TEST(RelTrace, Yanking) {
  for (std::size_t y = 0; y <= 5; ++y)
    EXPECT_EQ(rel_trace(rel_symmetry(y, y), {y, y, y}), FinRel::identity(y)) << y;
}

TEST(RelTrace, Naturality) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 100; ++i) {
    const Blocks k{3, 2, 3};
    const FinRel f = oracle::random_rel(rng, k.a + k.y, k.b + k.y, 0.3);
    const FinRel g = oracle::random_rel(rng, k.b, 2, 0.4);
    const FinRel h = oracle::random_rel(rng, 2, k.a, 0.4);
    // Tr(f ; (g + id)) = Tr(f) ; g and Tr((h + id) ; f) = h ; Tr(f).
    EXPECT_EQ(rel_trace(rel_compose(f, rel_tensor(g, FinRel::identity(k.y))), {k.a, k.y, 2}),
              rel_compose(rel_trace(f, k), g));
    EXPECT_EQ(rel_trace(rel_compose(rel_tensor(h, FinRel::identity(k.y)), f), {2, k.y, k.b}),
              rel_compose(h, rel_trace(f, k)));
  }
}

TEST(RelTrace, VanishingAndSymmetry) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 50; ++i) {
    const FinRel f = oracle::random_rel(rng, 3, 3, 0.4);
    EXPECT_EQ(rel_trace(f, {3, 0, 3}), f);
  }
  EXPECT_EQ(rel_compose(rel_symmetry(2, 3), rel_symmetry(3, 2)), FinRel::identity(5));
}

TEST(IntMor, RejectsWrongType) {
  EXPECT_THROW(RelMor(RelObj{1, 0}, RelObj{1, 0}, FinRel(2, 1)), InputError);
  EXPECT_NO_THROW(RelMor(RelObj{1, 2}, RelObj{0, 1}, FinRel(2, 2)));
}

TEST(IntCompose, MatchesPathSemantics) {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 200; ++i) {
    const RelObj a = random_obj(rng), b = random_obj(rng), c = random_obj(rng);
    const RelMor f = random_mor(rng, a, b), g = random_mor(rng, b, c);
    EXPECT_EQ(int_compose(f, g).base, compose_by_paths(f, g));
  }
}

TEST(IntCompose, AssociativeAndUnital) {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<std::size_t> d(0, 2);
  for (int i = 0; i < 100; ++i) {
    // Carriers up to 4 per side.
    const RelObj a{d(rng), d(rng)}, b{d(rng), d(rng)}, c{d(rng), d(rng)}, e{d(rng), d(rng)};
    const RelMor f = random_mor(rng, a, b), g = random_mor(rng, b, c), h = random_mor(rng, c, e);
    EXPECT_EQ(int_compose(int_compose(f, g), h), int_compose(f, int_compose(g, h)));
    EXPECT_EQ(int_compose(int_identity(a), f), f);
    EXPECT_EQ(int_compose(f, int_identity(b)), f);
  }
  EXPECT_THROW(int_compose(int_identity(RelObj{1, 0}), int_identity(RelObj{0, 1})), InputError);
}

TEST(IntCompose, IdentityIsIdempotent) {
  for (std::size_t n = 0; n <= 3; ++n) {
    const RelObj a{n, n};
    const RelMor id = int_identity(a);
    EXPECT_EQ(int_compose(id, id), id);
  }
}

TEST(IntTensor, AddsPolarities) {
  EXPECT_EQ(int_tensor(RelObj{1, 2}, RelObj{3, 0}), (RelObj{4, 2}));
}

TEST(Z, NormExamples) {
  EXPECT_EQ(znorm({3, 5}), (ZPair{0, 2}));
  EXPECT_EQ(znorm({5, 3}), (ZPair{2, 0}));
  EXPECT_EQ(znorm({4, 4}), (ZPair{0, 0}));
  EXPECT_EQ(ZPair({7, 2}).value(), -5);
  EXPECT_EQ(ZPair({1, 2}).str(), "<1,2>");
}

TEST(Z, Cancellation) {
  for (std::uint64_t m = 0; m <= 10; ++m)
    for (std::uint64_t n = 0; n <= 10; ++n)
      for (std::uint64_t k = 0; k <= 10; ++k) {
        EXPECT_EQ(znorm({m + k, n + k}), znorm({m, n}));
        EXPECT_EQ(znorm({m, n}).value(), static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m));
      }
}

TEST(Z, TensorIsAddition) {
  for (std::uint64_t a = 0; a <= 5; ++a)
    for (std::uint64_t b = 0; b <= 5; ++b) {
      const ZPair x{a, b}, y{b, 2 * a};
      EXPECT_EQ(ztensor(x, y).value(), x.value() + y.value());
      EXPECT_EQ(to_zpair(int_tensor(to_int_obj(x), to_int_obj(y))), ztensor(x, y));
    }
}

TEST(NatInt, IdentitiesCompose) {
  const IntObj<NatInstance> a{2, 3};
  const auto id = int_identity(a);
  EXPECT_EQ(int_compose(id, id), id);
  EXPECT_EQ(id.base.n, 5u);
  EXPECT_THROW(NatInstance::compose({1}, {2}), InputError);
}

TEST(RelFormat, ParseAndWrite) {
  std::ifstream in(COPROC_SAMPLES "/swap.rel");
  ASSERT_TRUE(in);
  const FinRel swap = parse_rel(in);
  EXPECT_EQ(swap, rel_symmetry(1, 1));
  std::ostringstream out;
  write_rel(out, swap);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_rel(back), swap);
  std::istringstream bad("rel 1 1\na0 -> b3\n");
  EXPECT_THROW(parse_rel(bad), ParseError);
  std::istringstream wrong_block("z0 -> b0\n");
  EXPECT_THROW(parse_traced_rel(wrong_block, {1, 1, 1}), ParseError);
}
