#include "doctest.h"
#include "siltlab/io.hpp"
#include "siltlab/nested_colimit.hpp"

using namespace siltlab;
using io::json;

TEST_CASE("algebra round trip") {
  auto j = json::parse(R"({"vertices":[1,2,3],"arrows":[{"id":"a","src":1,"tgt":2},{"id":"b","src":2,"tgt":3},
                           {"id":"c","src":1,"tgt":2}],"relations":[[{"path":"a*b","coef":"1"},{"path":"c*b","coef":"-1"}]]})");
  auto A = io::algebra_from_json(j);
  CHECK(A->dim() == 3 + 3 + 1);
  auto B = io::algebra_from_json(io::algebra_to_json(*A));
  CHECK(B->dim() == A->dim());
  CHECK(io::algebra_to_json(*B) == io::algebra_to_json(*A));

  auto cyc = json::parse(R"({"vertices":[1],"arrows":[{"id":"x","src":1,"tgt":1}]})");
  CHECK_THROWS_AS(io::algebra_from_json(cyc), CyclicQuiver);
  CHECK_THROWS_AS(io::algebra_from_json(json::parse(R"({"arrows":[]})")), InvalidInput);
  CHECK(io::load_algebra("a3")->num_vertices() == 3);
}

TEST_CASE("representation round trip") {
  auto A = kronecker();
  auto j = json::parse(R"({"dim":[2,1],"matrices":{"a":[["1/2"],["0"]],"b":[["0"],["-3"]]}})");
  auto m = io::rep_from_json<Q>(A, j);
  CHECK(m.mats[0](0, 0) == Q(1, 2));
  CHECK(io::rep_to_json(m) == j);
  auto m2 = io::rep_from_json<GF3>(A, j);
  CHECK(m2.mats[0](0, 0) == GF3(2));
  CHECK(m2.mats[1](1, 0) == GF3(0));
  CHECK_THROWS_AS(io::rep_from_json<Q>(A, json::parse(R"({"dim":[2,1],"matrices":{"a":[["1"]]}})")), InvalidInput);
  CHECK_THROWS_AS(io::rep_from_json<Q>(A, json::parse(R"({"dim":[1]})")), InvalidInput);
}

TEST_CASE("complex round trip") {
  auto chain = kronecker_chain(3);
  for (const auto& t : chain.t)
    for (const auto& s : t.summands) {
      auto j = io::complex_to_json(s);
      auto back = io::complex_from_json<Q>(s.alg, j);
      CHECK(is_isomorphic(back, s));
      CHECK(io::complex_to_json(back) == j);
    }
  auto A = kronecker();
  // single-term entries are accepted without the inner list
  auto x = io::complex_from_json<Q>(A, json::parse(R"({"neg":[1],"zero":[2,2],"d":[[{"path":"a"},{"path":"b","coef":"1"}]]})"));
  CHECK(g_vector(x) == std::vector<long long>{-1, 2});
  CHECK_THROWS_AS(io::complex_from_json<Q>(A, json::parse(R"({"neg":[1],"zero":[2],"d":[[[{"path":"a*b"}]]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(io::complex_from_json<Q>(A, json::parse(R"({"neg":[2],"zero":[1],"d":[[[{"path":"a"}]]]})")),
                  InvalidInput);

  Complex<Q> three = disk<Q>(A, {0}, -2);
  auto j3 = io::complex_to_json(three);
  CHECK(j3.contains("lo"));
  CHECK(io::complex_to_json(io::complex_from_json<Q>(A, j3)) == j3);
}

TEST_CASE("theta and bounds") {
  auto t = io::parse_theta("-1/2,3", 2);
  CHECK(t == Theta{Q(-1, 2), Q(3)});
  CHECK(io::vec_json(t) == json::parse(R"(["-1/2","3"])"));
  CHECK_THROWS_AS(io::parse_theta("-0.5,1", 2), InvalidInput);
  CHECK_THROWS_AS(io::parse_theta("1,2,3", 2), InvalidInput);
  CHECK(io::parse_dims("4,4", 2) == DimVector{4, 4});
  CHECK_THROWS_AS(io::parse_dims("4,-1", 2), InvalidInput);
}
