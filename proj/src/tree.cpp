#include "buildvol/tree.hpp"

#include "buildvol/errors.hpp"

#include <cmath>
#include <sstream>

namespace buildvol {

BigInt alpha(std::int64_t t, std::int64_t radius) {
  if (t < 2) throw Error(ErrorKind::DomainError, "alpha needs t >= 2");
  if (radius <= 0) throw Error(ErrorKind::DomainError, "alpha is defined for R >= 1 only");
  return BigInt(t + 1) * ipow(BigInt(t), static_cast<unsigned>(radius - 1));
}

BigInt sphere_size(std::int64_t t, std::int64_t radius) { return radius == 0 ? BigInt(1) : alpha(t, radius); }

BigInt ball_size(std::int64_t t, std::int64_t radius) {
  if (t < 2) throw Error(ErrorKind::DomainError, "ball_size needs t >= 2");
  if (radius < 0) throw Error(ErrorKind::DomainError, "negative radius");
  return 1 + BigInt(t + 1) * (ipow(BigInt(t), static_cast<unsigned>(radius)) - 1) / (t - 1);
}

double tree_entropy_closed_form(std::int64_t t) {
  if (t < 2) throw Error(ErrorKind::DomainError, "tree entropy needs t >= 2");
  return std::log(static_cast<double>(t));
}

namespace {

// Children of one vertex, in generation order.
struct ChildPlan {
  VertexKind kind;
  std::uint16_t edge_position;
  std::int64_t count;
};

std::vector<ChildPlan> plan_children(const TreeVertex& v, bool is_root, const ExtensionParams& p, bool expand,
                                     std::uint32_t& stubs) {
  std::vector<ChildPlan> plan;
  const std::int64_t q = p.q;
  const std::int64_t unramified = p.q_E() - q;
  // Along an F-edge the next vertex is a subdivision vertex until the e-th
  // step, which reaches the far F-vertex.
  auto along_edge = [&](std::uint16_t pos) {
    return pos == p.e ? ChildPlan{VertexKind::F, 0, 1}
                      : ChildPlan{VertexKind::Subdivision, pos, 1};
  };
  stubs = 0;
  switch (v.kind) {
    case VertexKind::F: {
      ChildPlan c = along_edge(1);
      c.count = is_root ? q + 1 : q;
      plan.push_back(c);
      break;
    }
    case VertexKind::Subdivision:
      plan.push_back(along_edge(static_cast<std::uint16_t>(v.edge_position + 1)));
      plan.push_back({VertexKind::RamifiedBranch, 0, q - 1});
      break;
    case VertexKind::RamifiedBranch:
      plan.push_back({VertexKind::RamifiedBranch, 0, q});
      break;
    case VertexKind::UnramifiedBranch:
      plan.push_back({VertexKind::UnramifiedBranch, 0, p.q_E()});
      return plan;
  }
  if (expand) plan.push_back({VertexKind::UnramifiedBranch, 0, unramified});
  else stubs = static_cast<std::uint32_t>(unramified);
  return plan;
}

}  // namespace

TreeBall build_extension_tree(const ExtensionParams& params, std::int64_t radius, const TreeBuildOptions& options) {
  params.validate();
  if (radius < 0) throw Error(ErrorKind::DomainError, "negative radius");
  if (params.e > 0xFFFF) throw Error(ErrorKind::DomainError, "ramification index too large");
  TreeBall ball;
  ball.params_ = params;
  ball.radius_ = radius;
  ball.expanded_ = options.expand_unramified;
  ball.stubs_by_depth_.assign(static_cast<std::size_t>(radius) + 2, 0);
  ball.vertices_.push_back(TreeVertex{});

  for (std::size_t head = 0; head < ball.vertices_.size(); ++head) {
    if (ball.vertices_[head].depth >= radius) continue;
    std::uint32_t stubs = 0;
    const auto plan = plan_children(ball.vertices_[head], head == 0, params, options.expand_unramified, stubs);
    std::int64_t total = 0;
    for (const auto& c : plan) total += c.count;
    if (ball.vertices_.size() + static_cast<std::size_t>(total) > options.budget)
      throw Error(ErrorKind::BudgetExceeded, "tree ball passed " + std::to_string(options.budget) + " vertices");

    const auto first = static_cast<std::uint32_t>(ball.vertices_.size());
    const std::uint32_t depth = ball.vertices_[head].depth + 1;
    for (const auto& c : plan) {
      for (std::int64_t k = 0; k < c.count; ++k) {
        TreeVertex child;
        child.parent = static_cast<std::uint32_t>(head);
        child.depth = depth;
        child.kind = c.kind;
        child.edge_position = c.edge_position;
        ball.vertices_.push_back(child);
      }
    }
    TreeVertex& v = ball.vertices_[head];
    v.first_child = first;
    v.child_count = static_cast<std::uint32_t>(total);
    v.stubs = stubs;
    ball.stubs_by_depth_[depth] += stubs;
  }
  return ball;
}

std::int64_t TreeBall::degree(std::size_t i) const {
  const TreeVertex& v = vertices_.at(i);
  return (i == 0 ? 0 : 1) + static_cast<std::int64_t>(v.child_count) + v.stubs;
}

std::string TreeBall::id(std::size_t i) const {
  std::vector<std::uint32_t> ordinals;
  while (i != 0) {
    const TreeVertex& v = vertices_.at(i);
    ordinals.push_back(static_cast<std::uint32_t>(i) - vertices_[v.parent].first_child);
    i = v.parent;
  }
  std::string out = "v";
  for (auto it = ordinals.rbegin(); it != ordinals.rend(); ++it) out += "." + std::to_string(*it);
  return out;
}

std::int64_t TreeBall::distance(std::size_t i, std::size_t j) const {
  std::int64_t d = 0;
  while (i != j) {
    if (vertices_.at(i).depth >= vertices_.at(j).depth) i = vertices_[i].parent;
    else j = vertices_[j].parent;
    ++d;
  }
  return d;
}

BigInt TreeBall::total_within(std::int64_t r) const {
  if (r < 0 || r > radius_) throw Error(ErrorKind::DomainError, "radius outside the generated ball");
  BigInt total = 0;
  for (const TreeVertex& v : vertices_)
    if (v.depth <= r) total += 1;
  // A stub rooted at depth k contributes 1 + t + ... + t^{r-k}, t = q^f.
  const BigInt t = params_.q_E();
  for (std::int64_t k = 1; k <= r; ++k) {
    const std::uint64_t roots = stubs_by_depth_[static_cast<std::size_t>(k)];
    if (roots == 0) continue;
    total += BigInt(roots) * ((ipow(t, static_cast<unsigned>(r - k + 1)) - 1) / (t - 1));
  }
  return total;
}

std::string TreeBall::to_dot() const {
  if (radius_ > 6) throw Error(ErrorKind::DomainError, "DOT export is limited to radius 6");
  if (!expanded_ && params_.f > 1)
    throw Error(ErrorKind::DomainError, "DOT export needs the unramified branches expanded");
  std::ostringstream os;
  os << "graph tree_ball {\n";
  os << "  // q=" << params_.q << " e=" << params_.e << " f=" << params_.f << " R=" << radius_ << "\n";
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const TreeVertex& v = vertices_[i];
    os << "  \"" << id(i) << "\" [";
    if (v.marked_F()) os << "style=filled, fillcolor=black, fontcolor=white";
    else if (v.marked_Eprime()) os << "style=filled, fillcolor=gray";
    else os << "shape=point";
    os << "];\n";
  }
  for (std::size_t i = 1; i < vertices_.size(); ++i)
    os << "  \"" << id(vertices_[i].parent) << "\" -- \"" << id(i) << "\";\n";
  os << "}\n";
  return os.str();
}

IntersectionCensus census_intersection(const TreeBall& ball, std::int64_t r) {
  if (r < 0 || r > ball.radius()) throw Error(ErrorKind::DomainError, "radius outside the generated ball");
  IntersectionCensus c;
  c.radius = r;
  std::uint64_t in_f = 0, in_eprime = 0, sphere = 0;
  for (const TreeVertex& v : ball.vertices()) {
    if (v.depth > r) continue;
    if (v.marked_F()) {
      ++in_f;
      if (v.depth == r) ++sphere;
    }
    if (v.marked_Eprime()) ++in_eprime;
  }
  c.in_F = in_f;
  c.in_Eprime = in_eprime;
  c.sphere_F = sphere;
  c.total = ball.total_within(r);
  return c;
}

std::vector<IntersectionCensus> census_profile(const TreeBall& ball) {
  std::vector<IntersectionCensus> out;
  for (std::int64_t r = 0; r <= ball.radius(); ++r) out.push_back(census_intersection(ball, r));
  return out;
}

RegularityScan scan_regularity(const TreeBall& ball) {
  RegularityScan scan;
  scan.stubs_expanded = ball.stubs_expanded() || ball.params().f == 1;
  const std::int64_t want = ball.params().q_E() + 1;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (ball.vertex(i).depth >= ball.radius()) continue;
    ++scan.scanned;
    if (ball.degree(i) != want) ++scan.violations;
  }
  return scan;
}

}  // namespace buildvol
