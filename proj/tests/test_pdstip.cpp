#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace stip;
using namespace testing_support;

namespace {

// u=0, v1=1, v2=2, w=3
AnchorChain chain4(const DiGraph& d) {
  AnchorChain c;
  c.vertices = {0, 1, 2, 3};
  for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
    const auto a = c.vertices[i], b = c.vertices[i + 1];
    for (EdgeId e = 0; e < d.m(); ++e) {
      const auto& arc = d.arc(e);
      if ((arc.tail == a && arc.head == b) || (arc.tail == b && arc.head == a)) c.edges.push_back(e);
    }
  }
  return c;
}

long choose(long n, long k) {
  if (k < 0 || k > n) return 0;
  long c = 1;
  for (long i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

TEST(ChainCandidates, ConsistentChainRootOff) {
  const auto d = DiGraph::simple(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto c = chain_candidates(d, chain4(d));
  EXPECT_EQ(c.candidates, (std::vector<EdgeId>{2}));
  EXPECT_EQ(c.reversal_count, 0);
}

TEST(ChainCandidates, OneReversal) {
  // u->v1, v2->v1, w->v2
  const auto d = DiGraph::simple(4, {{0, 1}, {2, 1}, {3, 2}});
  const auto c = chain_candidates(d, chain4(d));
  EXPECT_EQ(c.candidates, (std::vector<EdgeId>{0, 1}));
  EXPECT_EQ(c.reversal_count, 1);
}

TEST(ChainCandidates, RootEntryOnChain) {
  // u->v1->w with the root at v1
  const auto d = DiGraph::simple(3, {{0, 1}, {1, 2}});
  AnchorChain chain{{0, 1, 2}, {0, 1}};
  const auto c = chain_candidates(d, chain, 1);
  EXPECT_EQ(c.candidates, (std::vector<EdgeId>{0}));
  ASSERT_TRUE(c.root_entry.has_value());
  EXPECT_EQ(*c.root_entry, 1);
}

TEST(ChainCandidates, InteriorSourceRootOffIsInfeasible) {
  // u<-v1->w: v1 has no way in
  const auto d = DiGraph::simple(3, {{1, 0}, {1, 2}});
  AnchorChain chain{{0, 1, 2}, {0, 1}};
  EXPECT_TRUE(chain_candidates(d, chain).candidates.empty());
}

TEST(ChainCandidates, TwoInteriorSinks) {
  // u->v1<-v2->v3<-w: v1 and v3 each take two chain arcs, one deletion cannot fix both
  const auto d = DiGraph::simple(5, {{0, 1}, {2, 1}, {2, 3}, {4, 3}});
  AnchorChain chain{{0, 1, 2, 3, 4}, {0, 1, 2, 3}};
  const auto off = chain_candidates(d, chain);
  EXPECT_EQ(off.reversal_count, 3);
  EXPECT_TRUE(off.candidates.empty());
  EXPECT_TRUE(chain_candidates(d, chain, 2).candidates.empty());
}

TEST(ChainCandidates, SourceAtRootEntry) {
  // u<-v1<-v2->v3->w with the root at v2: either end arc may go
  const auto d = DiGraph::simple(5, {{1, 0}, {2, 1}, {2, 3}, {3, 4}});
  AnchorChain chain{{0, 1, 2, 3, 4}, {0, 1, 2, 3}};
  const auto c = chain_candidates(d, chain, 2);
  EXPECT_EQ(c.reversal_count, 1);
  EXPECT_EQ(c.candidates, (std::vector<EdgeId>{0, 3}));
  EXPECT_TRUE(chain_candidates(d, chain).candidates.empty());
}

TEST(ChainCandidates, MalformedChains) {
  const auto d = DiGraph::simple(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(chain_candidates(d, AnchorChain{{0, 2, 1}, {0, 1}}), InputError);
  EXPECT_THROW(chain_candidates(d, AnchorChain{{0, 1, 2}, {0}}), InputError);
  EXPECT_THROW(chain_candidates(d, AnchorChain{{0, 1, 2}, {0, 7}}), InputError);
  EXPECT_THROW(chain_candidates(d, AnchorChain{{0, 1, 2}, {0, 1}}, 0), InputError);
}

TEST(SpanningArborescence, Examples) {
  EXPECT_TRUE(is_spanning_arborescence(dipath(3), 0));
  EXPECT_FALSE(is_spanning_arborescence(dipath(3), 1));
  EXPECT_FALSE(is_spanning_arborescence(dicycle(4), 0));
  EXPECT_FALSE(is_spanning_arborescence(DiGraph::simple(3, {{0, 1}, {2, 1}}), 0));
  EXPECT_FALSE(is_spanning_arborescence(dipath(3), 5));
}

TEST(Pdstip, CycleExamples) {
  EXPECT_TRUE(solve_pdstip(dicycle(4), dipath(4)).yes());
  EXPECT_FALSE(solve_pdstip(dicycle(4), out_star(4)).yes());
}

TEST(Pdstip, TriangleWithChord) {
  const auto d = DiGraph::simple(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  const auto target = DiGraph::simple(3, {{0, 1}, {1, 2}});
  ASSERT_TRUE(brute_has_spanning_arborescence(d, target));
  const auto v = solve_pdstip(d, target);
  ASSERT_TRUE(v.yes());
  EXPECT_EQ(*v.removed, (std::vector<EdgeId>{2, 3}));
  EXPECT_TRUE(certify_directed(d, target, v));
}

TEST(Pdstip, Errors) {
  EXPECT_THROW(solve_pdstip(dicycle(3), DiGraph::simple(3, {{0, 1}, {2, 1}})), InputError);
  EXPECT_THROW(solve_pdstip(dicycle(3), dipath(4)), InputError);
  EXPECT_FALSE(solve_pdstip(DiGraph::simple(4, {{0, 1}, {2, 3}, {3, 2}}), dipath(4)).yes());
}

TEST(Pdstip, TraceHasOneLinePerReachableRoot) {
  const auto d = DiGraph::simple(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  std::ostringstream trace;
  PdstipOptions opt;
  opt.trace = &trace;
  PdstipStats st;
  solve_pdstip(d, out_star(3), opt, &st);
  const auto text = trace.str();
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), st.roots.size());
  EXPECT_NE(text.find("root=0 subsets="), std::string::npos);
}

TEST(CertifyDirected, TamperedMappingFails) {
  const auto v = solve_pdstip(dicycle(4), dipath(4));
  ASSERT_TRUE(v.yes());
  EXPECT_TRUE(certify_directed(dicycle(4), dipath(4), v));
  // reversing the image of one target arc
  auto bad = v;
  std::swap((*bad.mapping)[0], (*bad.mapping)[1]);
  EXPECT_FALSE(certify_directed(dicycle(4), dipath(4), bad));
  auto wrong = v;
  (*wrong.removed)[0] = ((*wrong.removed)[0] + 1) % 4;
  EXPECT_FALSE(certify_directed(dicycle(4), dipath(4), wrong));
}

TEST(Pdstip, SmallCorpusAgainstPermutationBruteForce) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const VertexId n = static_cast<VertexId>(3 + seed % 4);
    const auto inst = gen_instance({n, static_cast<long>(seed % 4), seed,
                                    seed % 2 ? GenMode::Random : GenMode::PlantedYes, true});
    const auto& d = std::get<DiGraph>(inst.graph);
    const auto& t = std::get<DiGraph>(inst.target);
    const auto v = solve_pdstip(d, t);
    EXPECT_EQ(v.yes(), brute_has_spanning_arborescence(d, t)) << "seed " << seed;
    if (v.yes()) EXPECT_TRUE(certify_directed(d, t, v));
  }
}

TEST(Pdstip, OneRemovedArcPerChain) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto inst = gen_instance({static_cast<VertexId>(5 + seed % 15), 2 + static_cast<long>(seed % 3), seed,
                                    GenMode::PlantedYes, true});
    const auto& d = std::get<DiGraph>(inst.graph);
    const auto v = solve_pdstip(d, std::get<DiGraph>(inst.target));
    ASSERT_TRUE(v.yes());
    const auto kernel = make_contractible(d.underlying());
    std::vector<int> chain_of_arc(static_cast<std::size_t>(d.m()), -1);
    for (std::size_t c = 0; c < kernel.chains.size(); ++c)
      for (auto e : kernel.chains[c].edges) chain_of_arc[e] = static_cast<int>(c);
    std::set<int> hit;
    for (auto e : *v.removed) {
      ASSERT_GE(chain_of_arc[e], 0);
      EXPECT_TRUE(hit.insert(chain_of_arc[e]).second);
    }
  }
}

TEST(Pdstip, WorkBoundPerRoot) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const long k = 2 + static_cast<long>(seed % 3);
    const auto inst = gen_instance({static_cast<VertexId>(5 + seed % 15), k, seed,
                                    seed % 2 ? GenMode::Random : GenMode::PlantedYes, true});
    PdstipStats st;
    solve_pdstip(std::get<DiGraph>(inst.graph), std::get<DiGraph>(inst.target), {}, &st);
    for (const auto& r : st.roots) EXPECT_LE(r.plans, choose(3 * k - 3, k) * (1L << k));
  }
}

TEST(Pdstip, CandidatesAreCompletePerChain) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = gen_instance({static_cast<VertexId>(4 + seed % 6), 2 + static_cast<long>(seed % 2), seed,
                                    GenMode::PlantedYes, true});
    const auto& d = std::get<DiGraph>(inst.graph);
    const auto kernel = make_contractible(d.underlying());
    for (VertexId r = 0; r < d.n(); ++r) {
      const auto entry = detail::root_entry_of(kernel, r);
      std::vector<std::vector<EdgeId>> cands;
      for (std::size_t c = 0; c < kernel.chains.size(); ++c) {
        std::optional<int> at;
        if (static_cast<EdgeId>(c) == entry.chain) at = entry.index;
        cands.push_back(chain_candidates(d, kernel.chains[c], at).candidates);
        EXPECT_LE(cands.back().size(), 2u);
      }
      for (const auto& removed : brute_arborescence_removals(d, r)) {
        for (auto e : removed) {
          bool found = false;
          for (const auto& c : cands)
            if (std::find(c.begin(), c.end(), e) != c.end()) found = true;
          EXPECT_TRUE(found) << "seed " << seed << " root " << r << " arc " << e;
        }
      }
    }
  }
}
