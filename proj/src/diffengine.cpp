#include "gridlab/diffengine.hpp"

#include <cmath>

#include "gridlab/problems.hpp"

namespace gridlab {

namespace {

JetBlock lift_inputs(const Matrix& points, int n_axes) {
  JetBlock in;
  in.v = points;
  for (int k = 0; k < n_axes; ++k) {
    Matrix seed = Matrix::Zero(points.rows(), points.cols());
    seed.row(k).setOnes();
    in.d1.push_back(std::move(seed));
    in.d2.push_back(Matrix::Zero(points.rows(), points.cols()));
  }
  return in;
}

}  // namespace

ForwardRecord record_forward(const ShallowNet& net, const Matrix& points, int n_axes) {
  if (points.rows() != net.layout.input_dim) throw ConfigError("record_forward: point dimension mismatch");
  if (n_axes < 0 || n_axes > net.layout.input_dim) throw ConfigError("record_forward: bad axis count");
  const auto blocks = layer_blocks(net.layout);
  const auto nk = static_cast<std::size_t>(n_axes);

  ForwardRecord rec;
  rec.n_axes = n_axes;
  JetBlock a = lift_inputs(points, n_axes);
  for (std::size_t l = 0; l + 1 < blocks.size(); ++l) {
    const auto p = net.block(blocks[l]);
    const auto w = p.leftCols(blocks[l].fan_in);
    HiddenTrace t;
    Matrix z = w * a.v;
    z.colwise() += p.col(blocks[l].fan_in);
    t.f = z.array().tanh().matrix();
    t.s = (1.0 - t.f.array().square()).matrix();

    JetBlock out;
    out.v = t.f;
    for (std::size_t k = 0; k < nk; ++k) {
      t.z_d1.push_back(w * a.d1[k]);
      t.z_d2.push_back(w * a.d2[k]);
      const auto zd1 = t.z_d1[k].array();
      const auto zd2 = t.z_d2[k].array();
      const auto s = t.s.array();
      out.d1.push_back((s * zd1).matrix());
      out.d2.push_back((s * zd2 - 2.0 * t.f.array() * s * zd1.square()).matrix());
    }
    t.input = std::move(a);
    a = std::move(out);
    rec.hidden.push_back(std::move(t));
  }

  const auto& ob = blocks.back();
  const auto po = net.block(ob);
  const auto rho = po.leftCols(ob.fan_in);
  rec.output.v = rho * a.v;
  rec.output.v.array() += po(0, ob.fan_in);
  for (std::size_t k = 0; k < nk; ++k) {
    rec.output.d1.push_back(rho * a.d1[k]);
    rec.output.d2.push_back(rho * a.d2[k]);
  }
  rec.last_hidden = std::move(a);
  return rec;
}

OutputSeeds OutputSeeds::zeros(Eigen::Index n_points, int n_axes) {
  OutputSeeds s;
  s.v = Eigen::RowVectorXd::Zero(n_points);
  s.d1.assign(static_cast<std::size_t>(n_axes), Eigen::RowVectorXd::Zero(n_points));
  s.d2.assign(static_cast<std::size_t>(n_axes), Eigen::RowVectorXd::Zero(n_points));
  return s;
}

void accumulate_gradient(const ShallowNet& net, const ForwardRecord& rec, const OutputSeeds& seeds, Vector& grad) {
  const auto nk = static_cast<std::size_t>(rec.n_axes);
  if (seeds.d1.size() != nk || seeds.d2.size() != nk || seeds.v.size() != rec.n_points())
    throw ConfigError("accumulate_gradient: seeds do not match the forward record");
  if (grad.size() != net.theta.size()) throw ConfigError("accumulate_gradient: gradient has the wrong length");

  const auto blocks = layer_blocks(net.layout);

  // Output layer: u = rho a + gamma, u_k = rho a_k, u_kk = rho a_kk.
  const auto& ob = blocks.back();
  {
    Eigen::Map<RowMatrix> g(grad.data() + ob.offset, ob.fan_out, ob.fan_in + 1);
    g.leftCols(ob.fan_in) += seeds.v * rec.last_hidden.v.transpose();
    for (std::size_t k = 0; k < nk; ++k) {
      g.leftCols(ob.fan_in) += seeds.d1[k] * rec.last_hidden.d1[k].transpose();
      g.leftCols(ob.fan_in) += seeds.d2[k] * rec.last_hidden.d2[k].transpose();
    }
    g(0, ob.fan_in) += seeds.v.sum();
  }
  const auto rho = net.block(ob).leftCols(ob.fan_in);
  JetBlock adj;
  adj.v = rho.transpose() * seeds.v;
  for (std::size_t k = 0; k < nk; ++k) {
    adj.d1.push_back(rho.transpose() * seeds.d1[k]);
    adj.d2.push_back(rho.transpose() * seeds.d2[k]);
  }

  for (std::size_t l = rec.hidden.size(); l-- > 0;) {
    const HiddenTrace& t = rec.hidden[l];
    const auto f = t.f.array();
    const auto s = t.s.array();
    const Eigen::ArrayXXd fs = f * s;

    // Through a = tanh(z), a_k = s z_k, a_kk = s z_kk - 2 f s z_k^2,
    // using ds/dz = -2 f s and d(f s)/dz = s^2 - 2 f^2 s.
    Eigen::ArrayXXd zbar_v = adj.v.array() * s;
    std::vector<Matrix> zbar_d1(nk);
    std::vector<Matrix> zbar_d2(nk);
    if (nk > 0) {
      const Eigen::ArrayXXd dfs = s * s - 2.0 * f * fs;
      for (std::size_t k = 0; k < nk; ++k) {
        const auto zd1 = t.z_d1[k].array();
        const auto zd2 = t.z_d2[k].array();
        const auto ad1 = adj.d1[k].array();
        const auto ad2 = adj.d2[k].array();
        zbar_v += -2.0 * fs * (ad1 * zd1 + ad2 * zd2) - 2.0 * dfs * zd1.square() * ad2;
        zbar_d1[k] = (ad1 * s - 4.0 * fs * zd1 * ad2).matrix();
        zbar_d2[k] = (ad2 * s).matrix();
      }
    }

    // Through z = W x + b, z_k = W x_k, z_kk = W x_kk.
    const auto& b = blocks[l];
    Eigen::Map<RowMatrix> g(grad.data() + b.offset, b.fan_out, b.fan_in + 1);
    const Matrix zv = zbar_v.matrix();
    g.leftCols(b.fan_in) += zv * t.input.v.transpose();
    for (std::size_t k = 0; k < nk; ++k) {
      g.leftCols(b.fan_in) += zbar_d1[k] * t.input.d1[k].transpose();
      g.leftCols(b.fan_in) += zbar_d2[k] * t.input.d2[k].transpose();
    }
    g.col(b.fan_in) += zv.rowwise().sum();

    if (l > 0) {
      const auto w = net.block(b).leftCols(b.fan_in);
      JetBlock next;
      next.v = w.transpose() * zv;
      for (std::size_t k = 0; k < nk; ++k) {
        next.d1.push_back(w.transpose() * zbar_d1[k]);
        next.d2.push_back(w.transpose() * zbar_d2[k]);
      }
      adj = std::move(next);
    }
  }
}

LossGradient loss_gradient(const ProblemSpec& p, const ShallowNet& net, const TrainingData& data) {
  const LossEvaluation ev = evaluate_loss(p, net, data);
  LossGradient out{ev.terms.total(), Vector::Zero(net.theta.size())};
  if (!std::isfinite(out.loss)) throw NonFiniteError("non-finite loss");

  const LinearOperator op = residual_operator(p);
  {
    // L_R = mean r^2, r linear in (u, u_k, u_kk).
    const Eigen::Index n = ev.residual.n_points();
    OutputSeeds seeds = OutputSeeds::zeros(n, ev.residual.n_axes);
    const Eigen::RowVectorXd dr = (2.0 / static_cast<double>(n)) * ev.residual_values.transpose();
    seeds.v = op.c_value * dr;
    for (std::size_t k = 0; k < seeds.d1.size(); ++k) {
      seeds.d1[k] = op.c_d1[k] * dr;
      seeds.d2[k] = op.c_d2[k] * dr;
    }
    accumulate_gradient(net, ev.residual, seeds, out.grad);
  }
  if (p.is_ode()) {
    const Eigen::Index n = ev.initial.n_points();
    OutputSeeds seeds = OutputSeeds::zeros(n, ev.initial.n_axes);
    const double scale = 2.0 / static_cast<double>(n);
    seeds.v = scale * (ev.initial.output.v.array() - p.x0).matrix();
    if (ev.initial.n_axes > 0) seeds.d1[0] = scale * (ev.initial.output.d1[0].array() - p.v0).matrix();
    accumulate_gradient(net, ev.initial, seeds, out.grad);
  } else {
    const Eigen::Index n = ev.boundary.n_points();
    OutputSeeds seeds = OutputSeeds::zeros(n, 0);
    seeds.v = (2.0 / static_cast<double>(n)) * (ev.boundary.output.v - data.bc_values.transpose());
    accumulate_gradient(net, ev.boundary, seeds, out.grad);
  }
  if (!out.grad.allFinite()) throw NonFiniteError("non-finite gradient");
  return out;
}

}  // namespace gridlab
