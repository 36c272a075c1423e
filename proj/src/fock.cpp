#include "rwqc/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "rwqc/errors.hpp"

namespace rwqc::fock {

namespace {

using cplx = std::complex<double>;

// Exact weight of the discarded n > N part of the expansion, including the
// (n+1) factor of the one-particle branch.
double discarded_weight(double chi, double x, int N) {
  const double c2 = chi * chi;
  const double s2 = 1.0 - c2;
  const double p = std::pow(x, N + 1);
  return p * (c2 + s2 * ((N + 2.0) - (N + 1.0) * x));
}

int subsystem_index(Subsystem s) { return static_cast<int>(s); }

}  // namespace

void TruncationPolicy::validate() const {
  if (cutoff < 1) throw validation_error("cutoff must be >= 1");
  if (!(tail_tol > 0.0)) throw validation_error("tail_tol must be > 0");
  if (hard_cap < cutoff) throw validation_error("hard_cap must be >= cutoff");
}

std::complex<double>& PureState::at(int q, int nk, int nmk) {
  return amp[(q * boson_dim + nk) * antiboson_dim + nmk];
}

const std::complex<double>& PureState::at(int q, int nk, int nmk) const {
  return amp[(q * boson_dim + nk) * antiboson_dim + nmk];
}

double PureState::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : amp) s += std::norm(a);
  return s;
}

int PureState::dim(Subsystem s) const {
  switch (s) {
    case Subsystem::Qubit:
      return 2;
    case Subsystem::Boson:
      return boson_dim;
    case Subsystem::Antiboson:
      return antiboson_dim;
  }
  return 0;
}

void DensityMatrix::validate(double herm_tol, double trace_tol) const {
  const double herm = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol) {
    throw numerical_error("density matrix not Hermitian: deviation " +
                          std::to_string(herm));
  }
  const double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > trace_tol) {
    throw numerical_error("density matrix trace " + std::to_string(tr) +
                          " deviates from 1");
  }
}

int choose_cutoff(double gamma_sq, const TruncationPolicy& policy) {
  policy.validate();
  if (gamma_sq == 0.0) return std::max(policy.cutoff, 1);
  const double lx = std::log(gamma_sq);
  const double l1mx = std::log1p(-gamma_sq);
  for (int N = policy.cutoff; N <= policy.hard_cap; ++N) {
    const double log_bound = (N + 1) * lx + std::log(N + 2.0) - 2.0 * l1mx;
    if (log_bound <= std::log(policy.tail_tol)) return N;
  }
  return -1;
}

PureState build_joint_state(const spectrum::ModeParams& mode,
                            const spectrum::BogoliubovData& bog,
                            const TruncationPolicy& policy) {
  mode.validate();
  const double x = bog.gamma_sq;
  if (!(x >= 0.0 && x < 1.0)) {
    throw validation_error("gamma_sq must lie in [0, 1)");
  }
  int N = choose_cutoff(x, policy);
  if (N < 0) {
    const double norm = 1.0 - discarded_weight(mode.chi, x, policy.hard_cap);
    throw truncation_error(
        "tail bound not reachable below the hard cap " +
            std::to_string(policy.hard_cap) + "; achieved norm " +
            std::to_string(norm),
        norm, policy.hard_cap);
  }

  PureState st;
  st.cutoff = N;
  st.boson_dim = N + 2;
  st.antiboson_dim = N + 1;
  st.amp.assign(2 * st.boson_dim * st.antiboson_dim, cplx(0.0, 0.0));

  const cplx alpha = bog.alpha();
  const cplx beta = bog.beta();
  const double abs_alpha = std::abs(alpha);
  const cplx ratio = std::conj(beta) / std::conj(alpha);
  const double chi = mode.chi;
  const double s = std::sqrt(std::max(0.0, 1.0 - chi * chi));

  cplx rp(1.0, 0.0);  // ratio^n
  for (int n = 0; n <= N; ++n) {
    st.at(0, n, n) = chi / abs_alpha * rp;
    st.at(1, n + 1, n) =
        s / abs_alpha * rp * std::sqrt(n + 1.0) / std::conj(alpha);
    rp *= ratio;
  }
  return st;
}

DensityMatrix partial_trace(const PureState& state,
                            std::initializer_list<Subsystem> keep_list) {
  std::vector<Subsystem> keep(keep_list);
  std::sort(keep.begin(), keep.end(), [](Subsystem a, Subsystem b) {
    return subsystem_index(a) < subsystem_index(b);
  });
  if (keep.empty() || keep.size() > 2 ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw validation_error("keep must name one or two distinct subsystems");
  }

  std::vector<Subsystem> traced;
  for (Subsystem s :
       {Subsystem::Qubit, Subsystem::Boson, Subsystem::Antiboson}) {
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) {
      traced.push_back(s);
    }
  }

  DensityMatrix dm;
  dm.subsystems = keep;
  int dim = 1;
  for (Subsystem s : keep) {
    dm.dims.push_back(state.dim(s));
    dim *= state.dim(s);
  }
  dm.basis.reserve(dim);
  if (keep.size() == 1) {
    for (int i = 0; i < dm.dims[0]; ++i) dm.basis.push_back({i});
  } else {
    for (int i = 0; i < dm.dims[0]; ++i) {
      for (int j = 0; j < dm.dims[1]; ++j) dm.basis.push_back({i, j});
    }
  }

  // rho = sum over traced tuples of |slice><slice|.
  dm.mat = Eigen::MatrixXcd::Zero(dim, dim);
  int traced_dim = 1;
  for (Subsystem s : traced) traced_dim *= state.dim(s);

  std::vector<int> full_idx(3, 0);
  Eigen::VectorXcd slice(dim);
  for (int t = 0; t < traced_dim; ++t) {
    int rem = t;
    for (std::size_t ti = traced.size(); ti-- > 0;) {
      full_idx[subsystem_index(traced[ti])] = rem % state.dim(traced[ti]);
      rem /= state.dim(traced[ti]);
    }
    for (int r = 0; r < dim; ++r) {
      for (std::size_t ki = 0; ki < keep.size(); ++ki) {
        full_idx[subsystem_index(keep[ki])] = dm.basis[r][ki];
      }
      slice(r) = state.at(full_idx[0], full_idx[1], full_idx[2]);
    }
    dm.mat.noalias() += slice * slice.adjoint();
  }
  return dm;
}

std::vector<double> pt_eigenvalues(const DensityMatrix& dm,
                                   Subsystem transpose_over) {
  if (dm.subsystems.size() != 2) {
    throw validation_error("partial transpose needs a two-subsystem matrix");
  }
  const auto it = std::find(dm.subsystems.begin(), dm.subsystems.end(),
                            transpose_over);
  if (it == dm.subsystems.end()) {
    throw validation_error("transpose subsystem is not part of this matrix");
  }
  const int which = static_cast<int>(it - dm.subsystems.begin());
  const int d0 = dm.dims[0], d1 = dm.dims[1];
  Eigen::MatrixXcd pt(d0 * d1, d0 * d1);
  for (int i0 = 0; i0 < d0; ++i0)
    for (int i1 = 0; i1 < d1; ++i1)
      for (int j0 = 0; j0 < d0; ++j0)
        for (int j1 = 0; j1 < d1; ++j1) {
          const int r = i0 * d1 + i1, c = j0 * d1 + j1;
          const int rs = (which == 0 ? j0 : i0) * d1 + (which == 1 ? j1 : i1);
          const int cs = (which == 0 ? i0 : j0) * d1 + (which == 1 ? i1 : j1);
          pt(r, c) = dm.mat(rs, cs);
        }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt,
                                                     Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  return ev;
}

double pt_trace_norm(const DensityMatrix& dm, Subsystem transpose_over) {
  double s = 0.0;
  for (double e : pt_eigenvalues(dm, transpose_over)) s += std::abs(e);
  return s;
}

double pt_negativity(const DensityMatrix& dm, Subsystem transpose_over) {
  return std::max(0.0, std::log2(pt_trace_norm(dm, transpose_over)));
}

double von_neumann_entropy(const DensityMatrix& dm) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dm.mat,
                                                     Eigen::EigenvaluesOnly);
  double S = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()[i];
    if (lam < -1e-10) {
      throw numerical_error("reduced density matrix has eigenvalue " +
                            std::to_string(lam));
    }
    if (lam > 0.0) S -= lam * std::log2(lam);
  }
  return S;
}

double mutual_information_numeric(const PureState& state, Subsystem a,
                                  Subsystem b) {
  const double Sa = von_neumann_entropy(partial_trace(state, {a}));
  const double Sb = von_neumann_entropy(partial_trace(state, {b}));
  const double Sab = von_neumann_entropy(partial_trace(state, {a, b}));
  return Sa + Sb - Sab;
}

OracleReport oracle_report(double chi, const spectrum::BogoliubovData& bog,
                           const TruncationPolicy& policy) {
  spectrum::ModeParams mode;
  mode.chi = chi;
  const PureState st = build_joint_state(mode, bog, policy);

  OracleReport r;
  r.cutoff = st.cutoff;
  r.norm = std::sqrt(st.norm_sq());

  const DensityMatrix rho_p = partial_trace(st, {Subsystem::Qubit});
  const DensityMatrix rho_k = partial_trace(st, {Subsystem::Boson});
  const DensityMatrix rho_mk = partial_trace(st, {Subsystem::Antiboson});
  const DensityMatrix rho_pk =
      partial_trace(st, {Subsystem::Qubit, Subsystem::Boson});
  const DensityMatrix rho_pmk =
      partial_trace(st, {Subsystem::Qubit, Subsystem::Antiboson});

  r.S_p = von_neumann_entropy(rho_p);
  r.S_k = von_neumann_entropy(rho_k);
  r.S_mk = von_neumann_entropy(rho_mk);
  r.S_pk = von_neumann_entropy(rho_pk);
  r.S_pmk = von_neumann_entropy(rho_pmk);
  r.I_pk = r.S_p + r.S_k - r.S_pk;
  r.I_pmk = r.S_p + r.S_mk - r.S_pmk;
  r.N_pk = pt_negativity(rho_pk, Subsystem::Qubit);
  r.pmk_pt_trace_norm = pt_trace_norm(rho_pmk, Subsystem::Qubit);
  return r;
}

}  // namespace rwqc::fock
