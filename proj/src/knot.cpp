#include "crosscal/knot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "crosscal/gram.hpp"
#include "crosscal/rng.hpp"
#include "json.hpp"

namespace crosscal {

double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::size_t n = v.size();
  while (n > 1) {
    std::size_t h = 0;
    for (std::size_t i = 0; i + 1 < n; i += 2) v[h++] = v[i] + v[i + 1];
    if (n % 2) v[h++] = v[n - 1];
    n = h;
  }
  return v[0];
}

DiscretizedKnot make_circle(int n, int m) {
  if (n < 3) throw std::invalid_argument("make_circle: ambient dimension must be >= 3");
  if (m < 3) throw std::invalid_argument("make_circle: need at least 3 vertices");
  DiscretizedKnot k{n, 1, KnotShape::Circle, {}, {}, {}, {}};
  const double w = 2.0 * M_PI / m;
  for (int j = 0; j < m; ++j) {
    const double a = 2.0 * M_PI * j / m;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    x[0] = std::cos(a);
    x[1] = std::sin(a);
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, 1);
    f(0, 0) = -std::sin(a);
    f(1, 0) = std::cos(a);
    k.vertices.push_back(std::move(x));
    k.weights.push_back(w);
    k.frames.push_back(std::move(f));
  }
  return k;
}

namespace {

// Signed spherical-triangle area (Oosterom-Strackee).
double spherical_area(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                      const Eigen::Vector3d& c) {
  const double num = a.dot(b.cross(c));
  const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return std::abs(2.0 * std::atan2(num, den));
}

}  // namespace

DiscretizedKnot make_sphere(int subdiv) {
  if (subdiv < 0 || subdiv > 6)
    throw std::invalid_argument("make_sphere: subdivision depth must be in 0..6");

  std::vector<Eigen::Vector3d> verts;
  for (int axis = 0; axis < 3; ++axis)
    for (int sgn : {1, -1}) verts.push_back(sgn * Eigen::Vector3d::Unit(axis));
  // vertex order: +x, -x, +y, -y, +z, -z
  std::vector<std::array<int, 3>> faces;
  for (int sx : {0, 1})
    for (int sy : {0, 1})
      for (int sz : {0, 1}) {
        std::array<int, 3> f{sx, 2 + sy, 4 + sz};
        const double det = verts[f[0]].dot(verts[f[1]].cross(verts[f[2]]));
        if (det < 0) std::swap(f[1], f[2]);
        faces.push_back(f);
      }

  for (int round = 0; round < subdiv; ++round) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = static_cast<int>(verts.size());
      verts.push_back((verts[a] + verts[b]).normalized());
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(4 * faces.size());
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  DiscretizedKnot k{3, 2, KnotShape::Sphere, {}, {}, {}, faces};
  std::vector<double> w(verts.size(), 0.0);
  for (const auto& f : faces) {
    const double area = spherical_area(verts[f[0]], verts[f[1]], verts[f[2]]) / 3.0;
    for (int i : f) w[i] += area;
  }
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Eigen::Vector3d& p = verts[i];
    Eigen::MatrixXd t =
        orthonormal_complement(p, Eigen::MatrixXd::Identity(3, 3), 2);
    // orient outward: det(t1, t2, p) > 0
    const Eigen::Vector3d t0 = t.col(0), t1 = t.col(1);
    if (t0.dot(t1.cross(p)) < 0) t.col(1) *= -1.0;
    k.vertices.push_back(p);
    k.weights.push_back(w[i]);
    k.frames.push_back(std::move(t));
  }
  return k;
}

DiscretizedKnot embed_isometric(const DiscretizedKnot& knot, const Eigen::MatrixXd& U) {
  if (U.cols() != knot.n)
    throw std::invalid_argument("embed_isometric: U must have one column per ambient axis");
  const int cols = static_cast<int>(U.cols());
  if ((U.transpose() * U - Eigen::MatrixXd::Identity(cols, cols)).cwiseAbs().maxCoeff() >
      1e-12)
    throw std::invalid_argument("embed_isometric: U columns must be orthonormal");
  DiscretizedKnot out{static_cast<int>(U.rows()), knot.s,       knot.shape, {},
                      knot.weights,               {},           knot.triangles};
  out.vertices.reserve(knot.size());
  out.frames.reserve(knot.size());
  for (int i = 0; i < knot.size(); ++i) {
    out.vertices.push_back(U * knot.vertices[i]);
    out.frames.push_back(U * knot.frames[i]);
  }
  return out;
}

DiscretizedKnot knot_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  DiscretizedKnot k{j.at("n").get<int>(), j.at("s").get<int>(), KnotShape::Custom,
                    {},                   {},                   {},
                    {}};
  if (k.n < 1 || k.n > AlternatingTensor::kMaxDim || k.s < 1 || k.s >= k.n)
    throw std::invalid_argument("knot JSON: bad dimensions");
  const auto& vs = j.at("vertices");
  const auto& ws = j.at("weights");
  const auto& fs = j.at("frames");
  if (vs.size() != ws.size() || vs.size() != fs.size() || vs.empty())
    throw std::invalid_argument("knot JSON: vertices/weights/frames length mismatch");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (static_cast<int>(vs[i].size()) != k.n)
      throw std::invalid_argument("knot JSON: vertex length != n");
    Eigen::VectorXd x(k.n);
    for (int c = 0; c < k.n; ++c) x[c] = vs[i][c].get<double>();
    const double w = ws[i].get<double>();
    if (!(w > 0)) throw std::invalid_argument("knot JSON: weights must be positive");
    if (static_cast<int>(fs[i].size()) != k.s)
      throw std::invalid_argument("knot JSON: frame must list s vectors");
    Eigen::MatrixXd f(k.n, k.s);
    for (int a = 0; a < k.s; ++a) {
      if (static_cast<int>(fs[i][a].size()) != k.n)
        throw std::invalid_argument("knot JSON: frame vector length != n");
      for (int c = 0; c < k.n; ++c) f(c, a) = fs[i][a][c].get<double>();
    }
    if ((f.transpose() * f - Eigen::MatrixXd::Identity(k.s, k.s)).cwiseAbs().maxCoeff() >
        1e-10)
      throw std::invalid_argument("knot JSON: frame not orthonormal");
    k.vertices.push_back(std::move(x));
    k.weights.push_back(w);
    k.frames.push_back(std::move(f));
  }
  return k;
}

std::string knot_to_json(const DiscretizedKnot& knot) {
  nlohmann::ordered_json j;
  j["n"] = knot.n;
  j["s"] = knot.s;
  auto vs = nlohmann::ordered_json::array();
  auto ws = nlohmann::ordered_json::array();
  auto fs = nlohmann::ordered_json::array();
  for (int i = 0; i < knot.size(); ++i) {
    auto v = nlohmann::ordered_json::array();
    for (int c = 0; c < knot.n; ++c) v.push_back(knot.vertices[i][c]);
    vs.push_back(std::move(v));
    ws.push_back(knot.weights[i]);
    auto f = nlohmann::ordered_json::array();
    for (int a = 0; a < knot.s; ++a) {
      auto col = nlohmann::ordered_json::array();
      for (int c = 0; c < knot.n; ++c) col.push_back(knot.frames[i](c, a));
      f.push_back(std::move(col));
    }
    fs.push_back(std::move(f));
  }
  j["vertices"] = std::move(vs);
  j["weights"] = std::move(ws);
  j["frames"] = std::move(fs);
  return j.dump();
}

NormalField make_normal_field(const DiscretizedKnot& knot,
                              std::vector<Eigen::VectorXd> vectors, double tol) {
  if (static_cast<int>(vectors.size()) != knot.size())
    throw std::invalid_argument("normal field: one vector per vertex required");
  for (int i = 0; i < knot.size(); ++i) {
    if (vectors[i].size() != knot.n)
      throw std::invalid_argument("normal field: vector dimension mismatch");
    if ((knot.frames[i].transpose() * vectors[i]).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("normal field: vector has a tangential component");
  }
  return {std::move(vectors)};
}

NormalField constant_normal_field(const DiscretizedKnot& knot, const Eigen::VectorXd& v,
                                  double tol) {
  return make_normal_field(knot, std::vector<Eigen::VectorXd>(knot.size(), v), tol);
}

NormalField random_normal_field(const DiscretizedKnot& knot, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::VectorXd> vecs;
  vecs.reserve(knot.size());
  for (int i = 0; i < knot.size(); ++i) {
    Eigen::VectorXd g = rng.gaussian_vector(knot.n);
    const Eigen::MatrixXd& F = knot.frames[i];
    vecs.push_back(g - F * (F.transpose() * g));
  }
  return {std::move(vecs)};
}

NormalField field_from_json(const DiscretizedKnot& knot, const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto& vs = j.at("vectors");
  std::vector<Eigen::VectorXd> vecs;
  for (const auto& row : vs) {
    Eigen::VectorXd v(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) v[c] = row[c].get<double>();
    vecs.push_back(std::move(v));
  }
  return make_normal_field(knot, std::move(vecs));
}

std::string field_to_json(const NormalField& field) {
  nlohmann::ordered_json j;
  auto vs = nlohmann::ordered_json::array();
  for (const auto& v : field.vectors) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < v.size(); ++c) row.push_back(v[c]);
    vs.push_back(std::move(row));
  }
  j["vectors"] = std::move(vs);
  return j.dump();
}

double g_k(const DiscretizedKnot& knot, const NormalField& u, const NormalField& v) {
  if (static_cast<int>(u.vectors.size()) != knot.size() ||
      static_cast<int>(v.vectors.size()) != knot.size())
    throw std::invalid_argument("g_k: field size mismatch");
  std::vector<double> parts(knot.size());
  for (int i = 0; i < knot.size(); ++i)
    parts[i] = knot.weights[i] * u.vectors[i].dot(v.vectors[i]);
  return pairwise_sum(std::move(parts));
}

double omega_k(const VcpStructure& S, const DiscretizedKnot& knot, const NormalField& u,
               const NormalField& v) {
  if (knot.s != S.r - 1)
    throw std::invalid_argument("omega_k: knot dimension must be fold - 1");
  if (knot.n != S.n) throw std::invalid_argument("omega_k: ambient dimension mismatch");
  std::vector<double> parts(knot.size());
  Eigen::MatrixXd args(S.n, S.r + 1);
  for (int i = 0; i < knot.size(); ++i) {
    args.leftCols(knot.s) = knot.frames[i];
    args.col(knot.s) = u.vectors[i];
    args.col(knot.s + 1) = v.vectors[i];
    parts[i] = knot.weights[i] * evaluate(S.phi, args);
  }
  return pairwise_sum(std::move(parts));
}

NormalField j_k(const VcpStructure& S, const DiscretizedKnot& knot, const NormalField& u) {
  if (knot.s != S.r - 1)
    throw std::invalid_argument("j_k: knot dimension must be fold - 1");
  if (knot.n != S.n) throw std::invalid_argument("j_k: ambient dimension mismatch");
  std::vector<Eigen::VectorXd> out(knot.size());
  for (int i = 0; i < knot.size(); ++i) {
    std::vector<Eigen::VectorXd> args;
    args.reserve(S.r);
    for (int a = 0; a < knot.s; ++a) args.push_back(knot.frames[i].col(a));
    args.push_back(u.vectors[i]);
    out[i] = chi(S, args);
  }
  return {std::move(out)};
}

AffineForm::AffineForm(int dim, int grade) : dim_(dim), grade_(grade) {
  if (dim < 1 || dim > AlternatingTensor::kMaxDim || grade < 0 || grade > dim)
    throw std::invalid_argument("affine form: bad dim/grade");
}

AffineForm AffineForm::constant(const AlternatingTensor& a) {
  AffineForm f(a.dim(), a.grade());
  for (const auto& [k, c] : a.terms())
    f.terms_.push_back({k, c, Eigen::VectorXd::Zero(a.dim())});
  return f;
}

void AffineForm::add_term(const std::vector<int>& indices, double a0,
                          const Eigen::VectorXd& grad) {
  if (static_cast<int>(indices.size()) != grade_)
    throw std::invalid_argument("affine form: wrong index count");
  if (grad.size() != dim_) throw std::invalid_argument("affine form: bad gradient length");
  std::vector<int> idx = indices;
  int sign = 1;
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return;
  for (int i : idx)
    if (i < 1 || i > dim_) throw std::invalid_argument("affine form: index out of range");
  terms_.push_back({AlternatingTensor::mask_of(idx), sign * a0, sign * grad});
}

AlternatingTensor AffineForm::at(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("affine form: bad point dimension");
  AlternatingTensor out(dim_, grade_);
  for (const auto& t : terms_) out.add_term(t.idx, t.a0 + t.grad.dot(x));
  return out;
}

AlternatingTensor AffineForm::d() const {
  AlternatingTensor out(dim_, grade_ + 1);
  for (const auto& t : terms_)
    for (int j = 0; j < dim_; ++j) {
      if (t.grad[j] == 0.0) continue;
      const AlternatingTensor::Mask bit = AlternatingTensor::Mask{1} << j;
      if (t.idx & bit) continue;
      out.add_term(bit | t.idx, merge_sign(bit, t.idx) * t.grad[j]);
    }
  out.prune();
  return out;
}

double hamiltonian_value(const DiscretizedKnot& knot, const AffineForm& eta) {
  if (eta.dim() != knot.n) throw std::invalid_argument("hamiltonian_value: dimension mismatch");
  if (eta.grade() != knot.s)
    throw std::invalid_argument("hamiltonian_value: form grade must equal knot dimension");
  std::vector<double> parts(knot.size());
  for (int i = 0; i < knot.size(); ++i)
    parts[i] = knot.weights[i] * evaluate(eta.at(knot.vertices[i]), knot.frames[i]);
  return pairwise_sum(std::move(parts));
}

namespace {

// Neighbor-difference discretization of the circle integral of eta; the same
// quadrature is used for the deformed and undeformed curve so the finite
// difference sees a consistent functional.
double circle_integral(const std::vector<Eigen::VectorXd>& Q, const AffineForm& eta) {
  const int m = static_cast<int>(Q.size());
  std::vector<double> parts(m);
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd edge = 0.5 * (Q[(j + 1) % m] - Q[(j + m - 1) % m]);
    parts[j] = evaluate(eta.at(Q[j]), std::vector<Eigen::VectorXd>{edge});
  }
  return pairwise_sum(std::move(parts));
}

}  // namespace

double hamiltonian_pairing_check(const VcpStructure& S, const DiscretizedKnot& knot,
                                 const AffineForm& eta, const LinearVectorField& v,
                                 const NormalField& delta, double eps) {
  if (knot.shape != KnotShape::Circle || knot.s != 1)
    throw std::invalid_argument(
        "hamiltonian_pairing_check: only circle knots are supported");
  if (knot.n != S.n || eta.dim() != S.n)
    throw std::invalid_argument("hamiltonian_pairing_check: dimension mismatch");
  if (static_cast<int>(delta.vectors.size()) != knot.size())
    throw std::invalid_argument("hamiltonian_pairing_check: field size mismatch");

  // validate the pair: iota_{v(x)} phi must equal d eta at sampled points
  const AlternatingTensor deta = eta.d();
  for (int i = 0; i < knot.size(); i += std::max(1, knot.size() / 8)) {
    const AlternatingTensor lhs = contract(v.at(knot.vertices[i]), S.phi);
    if (norm(lhs - deta) > 1e-8)
      throw std::invalid_argument(
          "hamiltonian_pairing_check: iota_v phi != d eta (invalid pair)");
  }

  const double f0 = circle_integral(knot.vertices, eta);
  std::vector<Eigen::VectorXd> deformed = knot.vertices;
  for (int i = 0; i < knot.size(); ++i) deformed[i] += eps * delta.vectors[i];
  const double feps = circle_integral(deformed, eta);

  std::vector<double> parts(knot.size());
  Eigen::MatrixXd args(S.n, S.r + 1);
  for (int i = 0; i < knot.size(); ++i) {
    args.leftCols(1) = knot.frames[i];
    args.col(1) = v.at(knot.vertices[i]);
    args.col(2) = delta.vectors[i];
    parts[i] = knot.weights[i] * evaluate(S.phi, args);
  }
  const double pairing = pairwise_sum(std::move(parts));
  return std::abs((feps - f0) / eps - pairing);
}

LagrangianProbeResult lagrangian_probe(const VcpStructure& S, const OrientedPlane& C,
                                       const DiscretizedKnot& knot,
                                       const std::vector<NormalField>& tangent_fields,
                                       const NormalField& outward_field, double tol) {
  if (knot.s != S.r - 1)
    throw std::invalid_argument("lagrangian_probe: knot dimension must be fold - 1");
  const Eigen::MatrixXd Pi = C.projector();
  for (int i = 0; i < knot.size(); ++i) {
    if ((knot.vertices[i] - Pi * knot.vertices[i]).norm() > 1e-8 ||
        (knot.frames[i] - Pi * knot.frames[i]).cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument("lagrangian_probe: knot not contained in C");
  }
  for (const auto& f : tangent_fields)
    for (int i = 0; i < knot.size(); ++i)
      if ((f.vectors[i] - Pi * f.vectors[i]).norm() > 1e-8)
        throw std::invalid_argument("lagrangian_probe: tangent field leaves C");

  LagrangianProbeResult r{true, 0.0, false, 0, 0.0, Eigen::VectorXd::Zero(S.n)};
  for (std::size_t a = 0; a < tangent_fields.size(); ++a)
    for (std::size_t b = a + 1; b < tangent_fields.size(); ++b)
      r.max_pairwise = std::max(
          r.max_pairwise, std::abs(omega_k(S, knot, tangent_fields[a], tangent_fields[b])));
  r.vanishes_on_C = r.max_pairwise < tol;

  // witness vertex: where the outward field leaves C the most
  double best = -1.0;
  for (int i = 0; i < knot.size(); ++i) {
    const double out = (outward_field.vectors[i] - Pi * outward_field.vectors[i]).norm();
    if (out > best) {
      best = out;
      r.witness_vertex = i;
    }
  }

  // bump probes: coordinate directions projected into C and off the tangent
  // frame, supported at the witness vertex only
  const int w = r.witness_vertex;
  Eigen::MatrixXd args(S.n, S.r + 1);
  for (int c = 0; c < S.n; ++c) {
    Eigen::VectorXd b = Pi * Eigen::VectorXd::Unit(S.n, c);
    b -= knot.frames[w] * (knot.frames[w].transpose() * b);
    const double nrm = b.norm();
    if (nrm < 1e-8) continue;
    b /= nrm;
    args.leftCols(knot.s) = knot.frames[w];
    args.col(knot.s) = b;
    args.col(knot.s + 1) = outward_field.vectors[w];
    const double val = knot.weights[w] * evaluate(S.phi, args);
    if (std::abs(val) > std::abs(r.witness_value)) {
      r.witness_value = val;
      r.witness_direction = b;
    }
  }
  r.witness_found = std::abs(r.witness_value) > tol;
  return r;
}

double isotropy_check(const DiscretizedKnot& knot, const AlternatingTensor& omega) {
  if (omega.dim() != knot.n) throw std::invalid_argument("isotropy_check: dimension mismatch");
  if (knot.s < 2) return 0.0;  // circles are automatically isotropic
  double worst = 0.0;
  for (int i = 0; i < knot.size(); ++i)
    for (int a = 0; a < knot.s; ++a)
      for (int b = a + 1; b < knot.s; ++b) {
        Eigen::MatrixXd pair(knot.n, 2);
        pair.col(0) = knot.frames[i].col(a);
        pair.col(1) = knot.frames[i].col(b);
        worst = std::max(worst, std::abs(evaluate(omega, pair)));
      }
  return worst;
}

QuotientFiberData quotient_structures(const CVcpStructure& S, const DiscretizedKnot& knot) {
  if (S.kind != CVcpKind::CalabiYau)
    throw std::invalid_argument("quotient_structures: Calabi-Yau structure required");
  if (knot.n != S.dim_real)
    throw std::invalid_argument("quotient_structures: ambient dimension mismatch");
  if (knot.s != S.n - 2)
    throw std::invalid_argument("quotient_structures: knot dimension must be n - 2");
  if (isotropy_check(knot, S.omega) > 1e-8)
    throw std::invalid_argument("quotient_structures: knot is not isotropic");

  QuotientFiberData q;
  const int N = S.dim_real;
  for (int i = 0; i < knot.size(); ++i) {
    Eigen::MatrixXd D(N, 2 * knot.s);
    D.leftCols(knot.s) = knot.frames[i];
    D.rightCols(knot.s) = S.J * knot.frames[i];
    auto Dq = try_orthonormalize(D, 1e-6);
    if (!Dq)
      throw std::invalid_argument("quotient_structures: rank defect in frame + J frame");
    const Eigen::MatrixXd B =
        orthonormal_complement(*Dq, Eigen::MatrixXd::Identity(N, N), 4);

    // iota_{frame} Omega, a complex 2-form when s = n - 2
    ComplexAlternatingTensor cur = S.Omega;
    for (int a = 0; a < knot.s; ++a) cur = contract(knot.frames[i].col(a), cur);

    Eigen::MatrixXd MI = Eigen::MatrixXd::Zero(4, 4), MJ = Eigen::MatrixXd::Zero(4, 4),
                    MK = Eigen::MatrixXd::Zero(4, 4);
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        Eigen::MatrixXd pair(N, 2);
        pair.col(0) = B.col(a);
        pair.col(1) = B.col(b);
        const double vj = evaluate(S.omega, pair);
        const double vi = evaluate(cur.re(), pair);
        const double vk = -evaluate(cur.im(), pair);  // iota Omega = omega_I - i omega_K
        MJ(a, b) = vj;
        MJ(b, a) = -vj;
        MI(a, b) = vi;
        MI(b, a) = -vi;
        MK(a, b) = vk;
        MK(b, a) = -vk;
      }
    q.fiber_basis.push_back(B);
    q.omega_I.push_back(MI);
    q.omega_J.push_back(MJ);
    q.omega_K.push_back(MK);
    q.I.push_back(MI.transpose());
    q.K.push_back(MK.transpose());
    q.J.push_back(B.transpose() * S.J * B);
  }
  return q;
}

double hamilton_check(const QuotientFiberData& q) {
  const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(4, 4);
  double worst = 0.0;
  auto upd = [&](const Eigen::MatrixXd& M) { worst = std::max(worst, M.cwiseAbs().maxCoeff()); };
  for (std::size_t i = 0; i < q.I.size(); ++i) {
    const Eigen::MatrixXd &I = q.I[i], &J = q.J[i], &K = q.K[i];
    upd(I * I + Id);
    upd(K * K + Id);
    upd(J * J + Id);
    upd(I * J + J * I);
    upd(K * J + J * K);
    upd(I + K * J);
    upd(K - I * J);
  }
  return worst;
}

double fiber_normalization_defect(const QuotientFiberData& q) {
  using Mat4c = Eigen::Matrix<std::complex<double>, 4, 4>;
  using Vec4c = Eigen::Matrix<std::complex<double>, 4, 1>;
  const std::complex<double> iu(0.0, 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < q.I.size(); ++i) {
    const Mat4c Mc =
        q.omega_I[i].cast<std::complex<double>>() - iu * q.omega_K[i].cast<std::complex<double>>();
    for (int a = 0; a < 4; ++a) {
      const Eigen::Vector4d d = Eigen::Vector4d::Unit(a);
      const Eigen::Vector4d Jd = q.J[i] * d;
      const Vec4c z =
          (d.cast<std::complex<double>>() - iu * Jd.cast<std::complex<double>>()) / std::sqrt(2.0);
      worst = std::max(worst, std::abs((Mc.transpose() * z).norm() - 2.0));
    }
  }
  return worst;
}

double fiber_j_invariance(const CVcpStructure& S, const QuotientFiberData& q) {
  double worst = 0.0;
  for (const auto& B : q.fiber_basis) {
    const Eigen::MatrixXd JB = S.J * B;
    worst = std::max(worst, (JB - B * (B.transpose() * JB)).cwiseAbs().maxCoeff());
  }
  return worst;
}

ComplexLagrangianProbeResult complex_lagrangian_probe(
    const CVcpStructure& S, const DiscretizedKnot& knot, const QuotientFiberData& q,
    const OrientedPlane& C, const std::vector<NormalField>& fields, double tol) {
  if (static_cast<std::size_t>(knot.size()) != q.fiber_basis.size())
    throw std::invalid_argument("complex_lagrangian_probe: quotient data size mismatch");
  const Eigen::MatrixXd Pi = C.projector();
  for (int i = 0; i < knot.size(); ++i)
    if ((knot.vertices[i] - Pi * knot.vertices[i]).norm() > 1e-8 ||
        (knot.frames[i] - Pi * knot.frames[i]).cwiseAbs().maxCoeff() > 1e-8)
      throw std::invalid_argument("complex_lagrangian_probe: knot not contained in C");
  for (const auto& f : fields)
    for (int i = 0; i < knot.size(); ++i)
      if ((f.vectors[i] - Pi * f.vectors[i]).norm() > 1e-8)
        throw std::invalid_argument("complex_lagrangian_probe: field leaves C");

  ComplexLagrangianProbeResult r{false, false, false, 0.0, 0.0, 0.0};
  auto val = [&](const std::vector<Eigen::MatrixXd>& M, const NormalField& u,
                 const NormalField& v) {
    std::vector<double> parts(knot.size());
    for (int i = 0; i < knot.size(); ++i) {
      const Eigen::VectorXd zu = q.fiber_basis[i].transpose() * u.vectors[i];
      const Eigen::VectorXd zv = q.fiber_basis[i].transpose() * v.vectors[i];
      parts[i] = knot.weights[i] * zu.dot(M[i] * zv);
    }
    return pairwise_sum(std::move(parts));
  };
  for (std::size_t a = 0; a < fields.size(); ++a)
    for (std::size_t b = a + 1; b < fields.size(); ++b) {
      r.max_I = std::max(r.max_I, std::abs(val(q.omega_I, fields[a], fields[b])));
      r.max_J = std::max(r.max_J, std::abs(val(q.omega_J, fields[a], fields[b])));
      r.max_K = std::max(r.max_K, std::abs(val(q.omega_K, fields[a], fields[b])));
    }
  r.omegaI_vanishes = r.max_I < tol;
  r.omegaJ_vanishes = r.max_J < tol;
  r.omegaK_vanishes = r.max_K < tol;
  return r;
}

SubmersionVerdict submersion_inequality_check(const VcpStructure& S,
                                              const DiscretizedKnot& knot,
                                              const NormalField& nu, const NormalField& mu) {
  const double lhs = omega_k(S, knot, nu, mu);
  const double nn = g_k(knot, nu, nu);
  const double mm = g_k(knot, mu, mu);
  const double nm = g_k(knot, nu, mu);
  const double rhs = std::sqrt(std::max(0.0, nn * mm - nm * nm));

  double wsum = 0.0, rmean = 0.0, amean = 0.0;
  std::vector<double> ratios(knot.size(), 0.0), angles(knot.size(), 0.0),
      ws(knot.size(), 0.0);
  for (int i = 0; i < knot.size(); ++i) {
    const double ln = nu.vectors[i].norm(), lm = mu.vectors[i].norm();
    if (ln < 1e-14 || lm < 1e-14) continue;
    const double cosang =
        std::clamp(nu.vectors[i].dot(mu.vectors[i]) / (ln * lm), -1.0, 1.0);
    ratios[i] = ln / lm;
    angles[i] = std::acos(cosang);
    ws[i] = knot.weights[i];
    wsum += ws[i];
    rmean += ws[i] * ratios[i];
    amean += ws[i] * angles[i];
  }
  SubmersionVerdict v{lhs, rhs, rhs - lhs, 0.0, 0.0, 0.0, 0.0, false, false};
  if (wsum > 0.0) {
    rmean /= wsum;
    amean /= wsum;
    double rvar = 0.0, avar = 0.0;
    for (int i = 0; i < knot.size(); ++i) {
      if (ws[i] == 0.0) continue;
      rvar += ws[i] * (ratios[i] - rmean) * (ratios[i] - rmean);
      avar += ws[i] * (angles[i] - amean) * (angles[i] - amean);
    }
    v.ratio_mean = rmean;
    v.ratio_variance = rvar / wsum;
    v.angle_mean = amean;
    v.angle_variance = avar / wsum;
  }
  v.inequality_holds = v.slack >= -1e-10;
  v.equality = std::abs(v.slack) < 1e-8;
  return v;
}

}  // namespace crosscal
