#include "bbpg/error_norms.hpp"

#include <algorithm>
#include <cmath>

#include "bbpg/quadrature.hpp"

namespace bbpg {

namespace {

// Spatial sample locations: all triangle quadrature points plus the nodes.
struct SpaceSamples {
  explicit SpaceSamples(const SpaceMesh& mesh) : mesh(&mesh) {
    const auto& pts = TriangleRule7::points();
    const std::size_t nq = mesh.triangle_count() * TriangleRule7::size;
    qx.resize(nq);
    qy.resize(nq);
    std::size_t k = 0;
    for (const auto& tri : mesh.triangles) {
      const auto& p0 = mesh.node_coords[tri[0]];
      const auto& p1 = mesh.node_coords[tri[1]];
      const auto& p2 = mesh.node_coords[tri[2]];
      for (int q = 0; q < TriangleRule7::size; ++q, ++k) {
        const auto& l = pts[q];
        qx[k] = l[0] * p0[0] + l[1] * p1[0] + l[2] * p2[0];
        qy[k] = l[0] * p0[1] + l[1] * p1[1] + l[2] * p2[1];
      }
    }
  }

  // FE values of a nodal field at every quadrature point.
  void evaluate(const SpatialField& field, std::vector<double>& out) const {
    const auto& pts = TriangleRule7::points();
    out.resize(qx.size());
    std::size_t k = 0;
    for (const auto& tri : mesh->triangles) {
      const double v0 = field.values[tri[0]];
      const double v1 = field.values[tri[1]];
      const double v2 = field.values[tri[2]];
      for (int q = 0; q < TriangleRule7::size; ++q, ++k) {
        const auto& l = pts[q];
        out[k] = l[0] * v0 + l[1] * v1 + l[2] * v2;
      }
    }
  }

  const SpaceMesh* mesh;
  std::vector<double> qx, qy;
};

// Reference evaluated through precomputed spatial profiles.
struct SeparablePolicy {
  SeparablePolicy(const SpaceSamples& samples, const SeparableExact& exact)
      : exact_(&exact) {
    profile_q.resize(samples.qx.size());
    for (std::size_t k = 0; k < profile_q.size(); ++k) {
      profile_q[k] = exact.space(samples.qx[k], samples.qy[k]);
    }
    const auto& coords = samples.mesh->node_coords;
    profile_n.resize(coords.size());
    for (std::size_t v = 0; v < coords.size(); ++v) {
      profile_n[v] = exact.space(coords[v][0], coords[v][1]);
    }
  }

  void prepare(double t) { c_ = exact_->time_coeff(t); }
  double at_quad(std::size_t k) const { return c_ * profile_q[k]; }
  double at_node(std::size_t v) const { return c_ * profile_n[v]; }
  const std::vector<double>& breakpoints() const {
    return exact_->time_breakpoints;
  }

  const SeparableExact* exact_;
  std::vector<double> profile_q, profile_n;
  double c_ = 0.0;
};

// Reference evaluated pointwise; slow path for generic references.
struct GeneralPolicy {
  GeneralPolicy(const SpaceSamples& samples, const SpaceTimeFn& exact)
      : samples_(&samples), exact_(&exact) {}

  void prepare(double t) { t_ = t; }
  double at_quad(std::size_t k) const {
    return (*exact_)(t_, samples_->qx[k], samples_->qy[k]);
  }
  double at_node(std::size_t v) const {
    const auto& c = samples_->mesh->node_coords[v];
    return (*exact_)(t_, c[0], c[1]);
  }
  const std::vector<double>& breakpoints() const { return empty_; }

  const SpaceSamples* samples_;
  const SpaceTimeFn* exact_;
  double t_ = 0.0;
  std::vector<double> empty_;
};

// One smooth-in-time piece of the field: FE values blend linearly between
// `left` and `right` with theta(t) affine through the anchor times (equal
// anchors mean a constant-in-time piece).
struct TimeSegment {
  double range_begin, range_end;
  double anchor_left, anchor_right;
  const std::vector<double>* quad_left;
  const std::vector<double>* quad_right;
  const std::vector<double>* node_left;
  const std::vector<double>* node_right;
};

template <class Policy>
class Accumulator {
 public:
  Accumulator(const SpaceMesh& mesh, Policy& policy)
      : policy_(&policy), area_(mesh.triangle_area()) {
    const auto& w = TriangleRule7::weights();
    qw_.assign(w.begin(), w.end());
  }

  void add_segment(const TimeSegment& seg) {
    // Quadrature times with weights, split at declared breakpoints, plus
    // weightless endpoint samples for the sup norm.
    sample(seg, seg.range_begin, 0.0);
    double left = seg.range_begin;
    const auto emit = [&](double a, double b) {
      const double mid = 0.5 * (a + b);
      const double half = 0.5 * (b - a);
      for (int i = 0; i < 5; ++i) {
        sample(seg, mid + half * Gauss5::nodes[i], half * Gauss5::weights[i]);
      }
    };
    for (double bp : policy_->breakpoints()) {
      if (bp <= left) continue;
      if (bp >= seg.range_end) break;
      emit(left, bp);
      sample(seg, bp, 0.0);
      left = bp;
    }
    emit(left, seg.range_end);
    sample(seg, seg.range_end, 0.0);
  }

  Norms3 finish() const {
    return Norms3{l1_, std::sqrt(l2sq_), linf_};
  }

 private:
  void sample(const TimeSegment& seg, double t, double weight) {
    policy_->prepare(t);
    const double theta =
        seg.anchor_right > seg.anchor_left
            ? (t - seg.anchor_left) / (seg.anchor_right - seg.anchor_left)
            : 0.0;
    const std::size_t nq = seg.quad_left->size();
    double abs_sum = 0.0, sq_sum = 0.0, sup = 0.0;
    const double* ql = seg.quad_left->data();
    const double* qr = seg.quad_right->data();
    for (std::size_t k = 0; k < nq; ++k) {
      const double fe = ql[k] + theta * (qr[k] - ql[k]);
      const double diff = fe - policy_->at_quad(k);
      const double w = qw_[k % 7];
      abs_sum += w * std::abs(diff);
      sq_sum += w * diff * diff;
      sup = std::max(sup, std::abs(diff));
    }
    const std::size_t nn = seg.node_left->size();
    const double* nl = seg.node_left->data();
    const double* nr = seg.node_right->data();
    for (std::size_t v = 0; v < nn; ++v) {
      const double fe = nl[v] + theta * (nr[v] - nl[v]);
      sup = std::max(sup, std::abs(fe - policy_->at_node(v)));
    }
    l1_ += weight * area_ * abs_sum;
    l2sq_ += weight * area_ * sq_sum;
    linf_ = std::max(linf_, sup);
  }

  Policy* policy_;
  double area_;
  std::vector<double> qw_;
  double l1_ = 0.0, l2sq_ = 0.0, linf_ = 0.0;
};

template <class Policy, class Exact>
Norms3 pc_norms(const SpaceMesh& mesh, const PCField& field, const Exact& exact) {
  const SpaceSamples samples(mesh);
  Policy policy(samples, exact);
  Accumulator<Policy> acc(mesh, policy);
  std::vector<double> quad;
  for (int m = 0; m < field.grid.intervals(); ++m) {
    samples.evaluate(field.interval_values[m], quad);
    const auto& nodal = field.interval_values[m].values;
    acc.add_segment({field.grid.nodes[m], field.grid.nodes[m + 1], 0.0, 0.0,
                     &quad, &quad, &nodal, &nodal});
  }
  return acc.finish();
}

template <class Policy, class Exact>
Norms3 pl_norms(const SpaceMesh& mesh, const PLField& field, const Exact& exact) {
  const SpaceSamples samples(mesh);
  Policy policy(samples, exact);
  Accumulator<Policy> acc(mesh, policy);
  std::vector<double> quad_left, quad_right;
  samples.evaluate(field.node_values[0], quad_left);
  for (int m = 0; m < field.grid.intervals(); ++m) {
    samples.evaluate(field.node_values[m + 1], quad_right);
    acc.add_segment({field.grid.nodes[m], field.grid.nodes[m + 1],
                     field.grid.nodes[m], field.grid.nodes[m + 1], &quad_left,
                     &quad_right, &field.node_values[m].values,
                     &field.node_values[m + 1].values});
    std::swap(quad_left, quad_right);
  }
  return acc.finish();
}

template <class Policy, class Exact>
Norms3 dual_norms(const SpaceMesh& mesh, const PCField& field,
                  const Exact& exact) {
  const SpaceSamples samples(mesh);
  Policy policy(samples, exact);
  Accumulator<Policy> acc(mesh, policy);
  const TimeGrid& grid = field.grid;
  const int steps = grid.intervals();
  DualInterpolant check(grid);  // validates M >= 3
  (void)check;

  std::vector<double> quad_left, quad_right;
  samples.evaluate(field.interval_values[0], quad_left);
  for (int j = 1; j <= steps - 1; ++j) {
    // Chord j spans dual nodes t*_j .. t*_{j+1} with interval values j-1, j
    // (0-based); the first and last chords extend to the domain ends.
    samples.evaluate(field.interval_values[j], quad_right);
    const double range_begin = (j == 1) ? 0.0 : grid.dual_nodes[j];
    const double range_end = (j == steps - 1) ? grid.horizon : grid.dual_nodes[j + 1];
    acc.add_segment({range_begin, range_end, grid.dual_nodes[j],
                     grid.dual_nodes[j + 1], &quad_left, &quad_right,
                     &field.interval_values[j - 1].values,
                     &field.interval_values[j].values});
    std::swap(quad_left, quad_right);
  }
  return acc.finish();
}

}  // namespace

Norms3 field_error_norms(const SpaceMesh& mesh, const PCField& field,
                         const SeparableExact& exact) {
  return pc_norms<SeparablePolicy>(mesh, field, exact);
}
Norms3 field_error_norms(const SpaceMesh& mesh, const PCField& field,
                         const SpaceTimeFn& exact) {
  return pc_norms<GeneralPolicy>(mesh, field, exact);
}
Norms3 field_error_norms(const SpaceMesh& mesh, const PLField& field,
                         const SeparableExact& exact) {
  return pl_norms<SeparablePolicy>(mesh, field, exact);
}
Norms3 field_error_norms(const SpaceMesh& mesh, const PLField& field,
                         const SpaceTimeFn& exact) {
  return pl_norms<GeneralPolicy>(mesh, field, exact);
}
Norms3 field_error_norms_dual(const SpaceMesh& mesh, const PCField& field,
                              const SeparableExact& exact) {
  return dual_norms<SeparablePolicy>(mesh, field, exact);
}
Norms3 field_error_norms_dual(const SpaceMesh& mesh, const PCField& field,
                              const SpaceTimeFn& exact) {
  return dual_norms<GeneralPolicy>(mesh, field, exact);
}

Norms3 control_error_norms(const PiecewiseLinear& u,
                           const PiecewiseConstant& exact) {
  std::vector<double> cuts = merge_breakpoints(u.t, exact.switches);
  if (cuts.front() > exact.t0) cuts.insert(cuts.begin(), exact.t0);
  if (cuts.back() < exact.t1) cuts.push_back(exact.t1);

  Norms3 norms;
  double l2sq = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double ref = exact(0.5 * (a + b));
    const double dl = u(a) - ref;
    const double dr = u(b) - ref;
    const double len = b - a;
    if (dl * dr < 0.0) {
      const double root = len * dl / (dl - dr);
      norms.l1 += 0.5 * (std::abs(dl) * root + std::abs(dr) * (len - root));
    } else {
      norms.l1 += 0.5 * (std::abs(dl) + std::abs(dr)) * len;
    }
    l2sq += len / 3.0 * (dl * dl + dl * dr + dr * dr);
    norms.linf = std::max({norms.linf, std::abs(dl), std::abs(dr)});
  }
  norms.l2 = std::sqrt(l2sq);
  return norms;
}

}  // namespace bbpg
