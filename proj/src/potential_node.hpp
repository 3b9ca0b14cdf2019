#ifndef LT_SRC_POTENTIAL_NODE_HPP
#define LT_SRC_POTENTIAL_NODE_HPP

#include <memory>
#include <variant>
#include <vector>

namespace lt::detail {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Zero {};
struct SquareWell {
  double depth, left, right;
};
struct PoschlTeller {
  double order, center, scale;
};
struct Gaussian {
  double amplitude, center, width;
};
struct PiecewiseConstant {
  std::vector<double> breakpoints;  // n + 1 strictly increasing
  std::vector<double> values;       // n
};
struct Sampled {
  std::vector<double> grid;  // strictly increasing
  std::vector<double> values;
};
struct Sum {
  std::vector<NodePtr> terms;
};
struct Scaled {
  double alpha;
  NodePtr inner;
};
struct Multiple {
  double factor;
  NodePtr inner;
};
struct Even {
  NodePtr inner;
};
struct Mirror {
  NodePtr inner;
};
struct Clip {
  bool positive;  // max{0, V} when true, max{0, -V} otherwise
  NodePtr inner;
};

struct Node {
  std::variant<Zero, SquareWell, PoschlTeller, Gaussian, PiecewiseConstant, Sampled, Sum, Scaled,
               Multiple, Even, Mirror, Clip>
      kind;
};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <class T>
NodePtr make_node(T family) {
  return std::make_shared<const Node>(Node{std::move(family)});
}

}  // namespace lt::detail

#endif  // LT_SRC_POTENTIAL_NODE_HPP
