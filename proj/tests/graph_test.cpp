#include <numeric>
#include <random>
#include <sstream>

#include <doctest.h>

#include "ctextr/graph.hpp"
#include "oracles.hpp"

using namespace ctextr;

namespace {

using Sets = std::vector<std::vector<std::string>>;

CooccurrenceGraph graph_of(const Sets& docs) {
  return build_graph(std::span<const std::vector<std::string>>(docs));
}

CooccurrenceGraph graph_from_weights(const Eigen::MatrixXi& w) {
  CooccurrenceGraph g;
  for (Eigen::Index i = 0; i < w.rows(); ++i) g.vertices.push_back("v" + std::to_string(i));
  g.weights = w;
  return g;
}

}  // namespace

TEST_CASE("build_context keeps noun/adjective/verb entities once each") {
  std::istringstream in("pope|noun|person\nchristmas|noun|\nmass|noun|\nattacked|verb|\nat|other|\n");
  const auto lex = parse_lexicon(in);
  const std::vector<SameCtextResource> resources = {
      {WebDocument{"http://a/", "Pope attacked at Christmas mass", "", 1}, MediaForm::unclassified},
      {WebDocument{"http://b/", "at the", "of and", 2}, MediaForm::unclassified},
      {WebDocument{"http://c/", "mass", "mass MASS", 3}, MediaForm::unclassified}};
  const auto ctx = build_context(resources, Gazetteer{}, lex);
  REQUIRE(ctx.size() == 3);
  CHECK(ctx[0].folded_forms() == std::vector<std::string>{"pope", "attacked", "christmas", "mass"});
  CHECK(ctx[0].doc_id == "http://a/");
  CHECK(ctx[1].entities.empty());
  CHECK(ctx[2].folded_forms() == std::vector<std::string>{"mass"});
  for (const auto& d : ctx) {
    for (const auto& e : d.entities) CHECK(is_reserved(e));
  }
}

TEST_CASE("build_graph counts co-occurring documents") {
  const auto g = graph_of({{"a", "b"}, {"a", "b", "c"}});
  CHECK(g.vertices == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.weights(0, 1) == 2);
  CHECK(g.weights(0, 2) == 1);
  CHECK(g.weights(1, 2) == 1);
  CHECK(g.weights.diagonal().isZero());
  CHECK(g.weights == g.weights.transpose());

  const auto single = graph_of({{"a"}});
  CHECK(single.size() == 1);
  CHECK(single.weights(0, 0) == 0);

  CHECK(graph_of({}).size() == 0);
  CHECK(graph_of({{"x", "x", "y"}}).weights(0, 1) == 1);
}

TEST_CASE("build_graph matches the pairwise document counter") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    Sets docs;
    for (int d = 0; d < 5; ++d) {
      std::vector<std::string> s;
      for (int e = 0; e < 6; ++e) {
        if (rng() % 2) s.push_back(std::string(1, static_cast<char>('a' + e)));
      }
      docs.push_back(s);
    }
    const auto g = graph_of(docs);
    CHECK(g.weights == oracle::pair_counts(docs, g.vertices));
  }
}

TEST_CASE("write_graph dumps each undirected edge once") {
  std::ostringstream out;
  write_graph(out, graph_of({{"b", "a"}, {"a", "b", "c"}}));
  CHECK(out.str() == "a\tb\t2\na\tc\t1\nb\tc\t1\n");
}

TEST_CASE("row_normalize") {
  Eigen::MatrixXi w(3, 3);
  w << 0, 2, 2, 2, 0, 0, 0, 0, 0;
  const auto p = row_normalize(w);
  CHECK(p(0, 0) == 0.0);
  CHECK(p(0, 1) == 0.5);
  CHECK(p(0, 2) == 0.5);
  CHECK(p(1, 0) == 1.0);
  for (int j = 0; j < 3; ++j) CHECK(p(2, j) == doctest::Approx(1.0 / 3));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(p.row(i).sum() - 1.0) < 1e-12);
  // Symmetric weights, asymmetric transition matrix.
  CHECK_FALSE(p.isApprox(p.transpose()));

  CHECK_THROWS_AS(row_normalize(Eigen::MatrixXi(0, 0)), Error);
  const auto pf = row_normalize<float>(w);
  CHECK(pf(0, 1) == 0.5f);
}

TEST_CASE("significance known values") {
  SUBCASE("one vertex") {
    const auto s = significance(graph_of({{"a"}}));
    REQUIRE(s.scores.size() == 1);
    CHECK(s.scores(0) == doctest::Approx(1.0));
    CHECK(s.iterations == 1);
    CHECK(s.converged);
  }
  SUBCASE("two symmetric vertices") {
    const auto s = significance(graph_of({{"a", "b"}}));
    CHECK(s.scores(0) == doctest::Approx(0.5));
    CHECK(s.scores(1) == doctest::Approx(0.5));
  }
  SUBCASE("path a-b-c") {
    // Direct solve: s = (19/74, 18/37, 19/74).
    const auto s = significance(graph_of({{"a", "b"}, {"b", "c"}}));
    CHECK(s.scores(1) > s.scores(0));
    CHECK(s.scores(0) == doctest::Approx(s.scores(2)).epsilon(1e-12));
    CHECK(std::abs(s.scores(0) - 19.0 / 74.0) < 1e-8);
    CHECK(std::abs(s.scores(1) - 18.0 / 37.0) < 1e-8);
    const auto solved = oracle::stationary(graph_of({{"a", "b"}, {"b", "c"}}).weights, 0.85);
    CHECK((s.scores - solved).lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("significance errors and non-convergence") {
  CHECK_THROWS_WITH_AS(significance(graph_of({})), "empty graph", Error);
  const auto g = graph_of({{"a", "b"}, {"b", "c"}});
  CHECK_THROWS_AS(significance(g, SignificanceOptions<double>{1.0, 1e-10, 10}), Error);
  CHECK_THROWS_AS(significance(g, SignificanceOptions<double>{0.85, 0.0, 10}), Error);
  const auto capped = significance(g, SignificanceOptions<double>{0.85, 1e-15, 3});
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 3);
  CHECK(capped.residual > 0);
}

TEST_CASE("significance invariants on random graphs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto w = oracle::random_weights(rng, n, 0.4, 4);
    const auto s = significance(w);
    CHECK(s.converged);
    CHECK(std::abs(s.scores.sum() - 1.0) < 1e-9);
    CHECK(s.scores.minCoeff() >= (1 - 0.85) / n - 1e-15);

    // Relabel vertices and compare.
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::PermutationMatrix<Eigen::Dynamic> pm(n);
    for (int i = 0; i < n; ++i) pm.indices()(i) = perm[static_cast<std::size_t>(i)];
    const Eigen::MatrixXi wp = pm * w * pm.transpose();
    const auto sp = significance(wp);
    CHECK((sp.scores - pm * s.scores).lpNorm<Eigen::Infinity>() < 1e-9);
  }
}

TEST_CASE("star hub beats every leaf") {
  for (int leaves = 2; leaves <= 7; ++leaves) {
    Eigen::MatrixXi w = Eigen::MatrixXi::Zero(leaves + 1, leaves + 1);
    w.row(0).tail(leaves).setOnes();
    w.col(0).tail(leaves).setOnes();
    const auto s = significance(graph_from_weights(w));
    for (int l = 1; l <= leaves; ++l) CHECK(s.scores(0) > s.scores(l));
  }
}

TEST_CASE("single precision instantiation") {
  const auto s = significance<float>(graph_of({{"a", "b"}, {"b", "c"}}),
                                     SignificanceOptions<float>{0.85f, 1e-6f, 200});
  CHECK(s.scores(1) == doctest::Approx(18.0 / 37.0).epsilon(1e-5));
}
