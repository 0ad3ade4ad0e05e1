#include <doctest.h>

#include "ldcswitch/oracles.hpp"

using namespace ldcswitch;

TEST_CASE("subset sum") {
  const SubsetSumAnswer yes = subset_sum_solvable({{1, 2, 3}, 5});
  CHECK(yes.solvable);
  CHECK(yes.subset == std::vector<std::int64_t>{2, 3});
  CHECK_FALSE(subset_sum_solvable({{1, 3}, 2}).solvable);
  CHECK(subset_sum_solvable({{1, 3}, 3}).solvable);
  CHECK_FALSE(subset_sum_solvable({{2}, 1}).solvable);
  CHECK(subset_sum_solvable({{4, 4}, 8}).subset.size() == 2);
}

TEST_CASE("subset sum witnesses add up") {
  for (std::int64_t target = 1; target <= 12; ++target) {
    const SubsetSumInstance instance{{3, 5, 2, 7}, target};
    const SubsetSumAnswer answer = subset_sum_solvable(instance);
    std::int64_t sum = 0;
    for (std::int64_t v : answer.subset) sum += v;
    if (answer.solvable) CHECK(sum == target);
  }
}

TEST_CASE("longest and Hamiltonian paths") {
  const GraphInstance cycle{{"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}, "a", "b"};
  const PathAnswer p = longest_path(cycle);
  CHECK(p.length == 3);
  CHECK(p.path == std::vector<std::string>{"a", "d", "c", "b"});
  CHECK(ham_path_exists(cycle));

  const GraphInstance star{{"a", "c", "b", "d"}, {{"a", "c"}, {"c", "b"}, {"c", "d"}}, "a", "b"};
  CHECK(longest_path(star).length == 2);
  CHECK_FALSE(ham_path_exists(star));

  const GraphInstance apart{{"a", "b"}, {}, "a", "b"};
  CHECK_THROWS_AS(longest_path(apart), InstanceError);
}

TEST_CASE("three-dimensional assignment") {
  CHECK(m3da_min({{"x"}, {"y"}, {"w"}, {7}}).cost == 7);
  // Diagonal pairs (0,0,0)+(1,1,1) cost 2; the cheapest is (0,1,0)+(1,0,1).
  const M3daInstance two{{"x1", "x2"}, {"y1", "y2"}, {"w1", "w2"}, {1, 9, 0, 9, 9, 0, 9, 1}};
  const AssignmentAnswer best = m3da_min(two);
  CHECK(best.cost == 0);
  CHECK(best.assignment == std::vector<std::pair<std::size_t, std::size_t>>{{1, 0}, {0, 1}});

  M3daInstance big;
  for (int i = 0; i < 5; ++i) {
    big.x.push_back("x" + std::to_string(i));
    big.y.push_back("y" + std::to_string(i));
    big.w.push_back("w" + std::to_string(i));
  }
  big.cost.assign(125, 1);
  CHECK_THROWS_AS(m3da_min(big), InstanceError);
}
