#include "nlsw/ifrk.hpp"

#include <cmath>

namespace nlsw {

double ButcherTableau::conservation_residual() const {
  double worst = 0.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      worst = std::max(worst, std::abs(b[i] * a_at(i, j) + b[j] * a_at(j, i) -
                                       b[i] * b[j]));
  return worst;
}

double ButcherTableau::consistency_residual() const {
  double worst = 0.0;
  double bsum = 0.0;
  for (int i = 0; i < s; ++i) {
    double row = 0.0;
    for (int j = 0; j < s; ++j) row += a_at(i, j);
    worst = std::max(worst, std::abs(row - c[i]));
    bsum += b[i];
  }
  return std::max(worst, std::abs(bsum - 1.0));
}

void ButcherTableau::validate() const {
  require(s >= 1, ErrorCode::InvalidArgument, "tableau: needs >= 1 stage");
  require(a.size() == static_cast<std::size_t>(s) * s &&
              b.size() == static_cast<std::size_t>(s) &&
              c.size() == static_cast<std::size_t>(s),
          ErrorCode::InvalidArgument, "tableau: coefficient sizes mismatch");
}

ButcherTableau gauss_tableau(int s) {
  ButcherTableau t;
  t.s = s;
  t.order = 2 * s;
  if (s == 2) {
    const double r3 = std::sqrt(3.0);
    t.a = {0.25, 0.25 - r3 / 6.0,  //
           0.25 + r3 / 6.0, 0.25};
    t.b = {0.5, 0.5};
    t.c = {0.5 - r3 / 6.0, 0.5 + r3 / 6.0};
  } else if (s == 3) {
    const double r15 = std::sqrt(15.0);
    t.a = {5.0 / 36.0,             2.0 / 9.0 - r15 / 15.0, 5.0 / 36.0 - r15 / 30.0,
           5.0 / 36.0 + r15 / 24.0, 2.0 / 9.0,             5.0 / 36.0 - r15 / 24.0,
           5.0 / 36.0 + r15 / 30.0, 2.0 / 9.0 + r15 / 15.0, 5.0 / 36.0};
    t.b = {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0};
    t.c = {0.5 - r15 / 10.0, 0.5, 0.5 + r15 / 10.0};
  } else {
    fail(ErrorCode::Unsupported,
         "gauss_tableau: only s in {2, 3} is shipped built-in");
  }
  return t;
}

double check_conservation_condition(const ButcherTableau& tableau) {
  tableau.validate();
  return tableau.conservation_residual();
}

namespace {

// Gaussian elimination with partial pivoting for the small stage systems.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col]))
        pivot = row;
    require(std::abs(a[pivot * n + col]) >= 1e-12 * scale,
            ErrorCode::SingularStageSystem,
            "stage system: pivot below 1e-12 x matrix scale; "
            "the step size is too large for this state");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
      std::swap(rhs[col], rhs[pivot]);
    }
    for (int row = col + 1; row < n; ++row) {
      const double f = a[row * n + col] / a[col * n + col];
      for (int j = col; j < n; ++j) a[row * n + j] -= f * a[col * n + j];
      rhs[row] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (int row = n - 1; row >= 0; --row) {
    double acc = rhs[row];
    for (int j = row + 1; j < n; ++j) acc -= a[row * n + j] * x[j];
    x[row] = acc / a[row * n + row];
  }
  return x;
}

}  // namespace

std::vector<double> solve_stage_r(const std::vector<Field>& f_tilde_hat,
                                  const std::vector<Field>& v_lin_hat,
                                  double r_n, const ButcherTableau& tableau,
                                  double tau, double beta, ExpTable& table) {
  const int s = tableau.s;
  require(static_cast<int>(f_tilde_hat.size()) == s &&
              static_cast<int>(v_lin_hat.size()) == s,
          ErrorCode::InvalidArgument, "solve_stage_r: needs one field per stage");

  // w_jk = Re( f~^j, e22((c_j - c_k) tau) f~^k ),  d_j = Re( f~^j, v_lin^j ).
  std::vector<double> w(static_cast<std::size_t>(s) * s);
  std::vector<double> d(s);
  for (int j = 0; j < s; ++j) {
    d[j] = inner_l2_spectral(f_tilde_hat[j], v_lin_hat[j]).real();
    for (int k = 0; k < s; ++k) {
      const ExpElementPtr e22 =
          table.get(ExpBlock::E22, (tableau.c[j] - tableau.c[k]) * tau);
      w[j * s + k] =
          inner_l2_spectral(f_tilde_hat[j], e22->apply(f_tilde_hat[k])).real();
    }
  }

  // Substituting v^{nj} into r^{ni} = r^n + tau sum_j a_ij Re(f~^j, v^{nj})
  // gives (I + tau^2 beta M) r = rhs with M_ik = sum_j a_ij a_jk w_jk.
  std::vector<double> mat(static_cast<std::size_t>(s) * s, 0.0);
  std::vector<double> rhs(s, r_n);
  for (int i = 0; i < s; ++i) {
    for (int k = 0; k < s; ++k) {
      double acc = 0.0;
      for (int j = 0; j < s; ++j)
        acc += tableau.a_at(i, j) * tableau.a_at(j, k) * w[j * s + k];
      mat[i * s + k] = (i == k ? 1.0 : 0.0) + tau * tau * beta * acc;
    }
    for (int j = 0; j < s; ++j) rhs[i] += tau * tableau.a_at(i, j) * d[j];
  }
  return solve_dense(std::move(mat), std::move(rhs));
}

IfrkStepper::IfrkStepper(const ProblemParams& params, double tau,
                         ButcherTableau tableau, IfrkOptions options)
    : params_(params),
      tau_(tau),
      tableau_(std::move(tableau)),
      options_(options),
      table_(params.grid, params.alpha) {
  params_.validate();
  require(tau_ > 0.0 && std::isfinite(tau_), ErrorCode::InvalidArgument,
          "ifrk: step size must be positive");
  tableau_.validate();
  require(options_.predictor_tol > 0.0, ErrorCode::InvalidArgument,
          "ifrk: predictor tolerance must be positive");
  max_iter_ = options_.predictor_max_iter > 0 ? options_.predictor_max_iter
                                              : tableau_.order + 2;
  require(max_iter_ >= 1, ErrorCode::InvalidArgument,
          "ifrk: predictor iteration cap must be >= 1");
}

std::vector<Field> IfrkStepper::sample_sources(double t_n) const {
  std::vector<Field> out;
  if (!params_.has_source()) return out;
  out.reserve(tableau_.s);
  for (int i = 0; i < tableau_.s; ++i) {
    const double t_stage = t_n + tableau_.c[i] * tau_;
    out.push_back(Field::sample(params_.grid,
                                [&](double x, double y) {
                                  return params_.source(x, y, t_stage);
                                })
                      .dst_forward());
  }
  return out;
}

std::vector<Field> IfrkStepper::predict_stages(const Field& u_hat,
                                               const Field& v_hat,
                                               double t_n) {
  const int s = tableau_.s;
  const std::vector<Field> src = sample_sources(t_n);

  // Constant part of the stage map: linear flow plus source quadrature.
  std::vector<Field> lin;
  lin.reserve(s);
  for (int i = 0; i < s; ++i) {
    Field acc = Field::zeros(params_.grid, Repr::Spectral);
    table_.get(ExpBlock::E11, tableau_.c[i] * tau_)
        ->accumulate(Complex(1.0), u_hat, acc);
    table_.get(ExpBlock::E12, tableau_.c[i] * tau_)
        ->accumulate(Complex(1.0), v_hat, acc);
    if (!src.empty())
      for (int j = 0; j < s; ++j)
        table_.get(ExpBlock::E12, (tableau_.c[i] - tableau_.c[j]) * tau_)
            ->accumulate(Complex(tau_ * tableau_.a_at(i, j)), src[j], acc);
    lin.push_back(std::move(acc));
  }

  const double nl_coeff = params_.nonlinear_off
                              ? 0.0
                              : (options_.strict_predictor ? 1.0 : params_.beta);
  const Field u_phys = u_hat.dst_inverse();
  std::vector<Field> iter_phys(s, u_phys);
  last_predictor_iters_ = 0;

  for (int sweep = 0; sweep < max_iter_; ++sweep) {
    std::vector<Field> g_hat;
    if (nl_coeff != 0.0) {
      g_hat.reserve(s);
      for (int j = 0; j < s; ++j)
        g_hat.push_back(g_fn(iter_phys[j]).dst_forward());
    }

    double diff = 0.0;
    for (int i = 0; i < s; ++i) {
      Field next_hat = lin[i];
      if (nl_coeff != 0.0)
        for (int j = 0; j < s; ++j)
          table_.get(ExpBlock::E12, (tableau_.c[i] - tableau_.c[j]) * tau_)
              ->accumulate(Complex(-tau_ * nl_coeff * tableau_.a_at(i, j)),
                           g_hat[j], next_hat);
      Field next_phys = next_hat.dst_inverse();
      Field delta = next_phys;
      delta -= iter_phys[i];
      diff = std::max(diff, norm_linf(delta));
      iter_phys[i] = std::move(next_phys);
    }
    ++last_predictor_iters_;
    for (int i = 0; i < s; ++i) {
      const double sup = norm_linf(iter_phys[i]);
      require(std::isfinite(sup) && sup < kOverflowGuard, ErrorCode::NonFinite,
              "ifrk: predictor iterates diverged; "
              "the step size is too large for this state");
    }
    if (diff < options_.predictor_tol) break;
  }
  return iter_phys;
}

SavState IfrkStepper::step(const SavState& state) {
  const int s = tableau_.s;
  const Field u_hat = state.u.to(Repr::Spectral);
  const Field v_hat = state.v.to(Repr::Spectral);
  const std::vector<Field> src = sample_sources(state.t);

  const std::vector<Field> predictions = predict_stages(u_hat, v_hat, state.t);
  std::vector<Field> f_hat;
  f_hat.reserve(s);
  for (int i = 0; i < s; ++i) {
    if (params_.nonlinear_off)
      f_hat.push_back(Field::zeros(params_.grid, Repr::Spectral));
    else
      f_hat.push_back(f_N(predictions[i], params_.c0).dst_forward());
  }

  // Known parts of the stage velocities.
  std::vector<Field> v_lin;
  v_lin.reserve(s);
  for (int j = 0; j < s; ++j) {
    Field acc = Field::zeros(params_.grid, Repr::Spectral);
    table_.get(ExpBlock::E21, tableau_.c[j] * tau_)
        ->accumulate(Complex(1.0), u_hat, acc);
    table_.get(ExpBlock::E22, tableau_.c[j] * tau_)
        ->accumulate(Complex(1.0), v_hat, acc);
    if (!src.empty())
      for (int k = 0; k < s; ++k)
        table_.get(ExpBlock::E22, (tableau_.c[j] - tableau_.c[k]) * tau_)
            ->accumulate(Complex(tau_ * tableau_.a_at(j, k)), src[k], acc);
    v_lin.push_back(std::move(acc));
  }

  const std::vector<double> r_stage =
      solve_stage_r(f_hat, v_lin, state.r, tableau_, tau_, params_.beta,
                    table_);

  // Stage velocities with the solved scalars.
  std::vector<Field> v_stage = v_lin;
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k)
      table_.get(ExpBlock::E22, (tableau_.c[j] - tableau_.c[k]) * tau_)
          ->accumulate(Complex(-tau_ * params_.beta * tableau_.a_at(j, k) *
                               r_stage[k]),
                       f_hat[k], v_stage[j]);

  // Update.
  Field u_next = Field::zeros(params_.grid, Repr::Spectral);
  table_.get(ExpBlock::E11, tau_)->accumulate(Complex(1.0), u_hat, u_next);
  table_.get(ExpBlock::E12, tau_)->accumulate(Complex(1.0), v_hat, u_next);
  Field v_next = Field::zeros(params_.grid, Repr::Spectral);
  table_.get(ExpBlock::E21, tau_)->accumulate(Complex(1.0), u_hat, v_next);
  table_.get(ExpBlock::E22, tau_)->accumulate(Complex(1.0), v_hat, v_next);
  double r_next = state.r;
  for (int i = 0; i < s; ++i) {
    const double t_rem = (1.0 - tableau_.c[i]) * tau_;
    const Complex coeff(-tau_ * params_.beta * tableau_.b[i] * r_stage[i]);
    table_.get(ExpBlock::E12, t_rem)->accumulate(coeff, f_hat[i], u_next);
    table_.get(ExpBlock::E22, t_rem)->accumulate(coeff, f_hat[i], v_next);
    if (!src.empty()) {
      table_.get(ExpBlock::E12, t_rem)
          ->accumulate(Complex(tau_ * tableau_.b[i]), src[i], u_next);
      table_.get(ExpBlock::E22, t_rem)
          ->accumulate(Complex(tau_ * tableau_.b[i]), src[i], v_next);
    }
    r_next += tau_ * tableau_.b[i] *
              inner_l2_spectral(f_hat[i], v_stage[i]).real();
  }

  SavState next{std::move(u_next), std::move(v_next), r_next, state.t + tau_};
  require(next.u.all_finite() && next.v.all_finite() && std::isfinite(next.r),
          ErrorCode::NonFinite, "ifrk: step produced non-finite values");
  return next;
}

}  // namespace nlsw
