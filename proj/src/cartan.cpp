#include "kmt/cartan.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <map>

namespace kmt {

GeneralizedCartanMatrix GeneralizedCartanMatrix::validate(IntMatrix entries, std::vector<std::string> labels) {
  const int n = static_cast<int>(entries.size());
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(entries[i].size()) != n)
      throw GcmError(GcmError::Kind::NotSquare, i, -1, "matrix is not square (row " + std::to_string(i) + ")");
  if (n == 0) throw GcmError(GcmError::Kind::NotSquare, -1, -1, "empty matrix");
  for (int i = 0; i < n; ++i)
    if (entries[i][i] != 2)
      throw GcmError(GcmError::Kind::DiagonalNotTwo, i, i, "DiagonalNotTwo(" + std::to_string(i) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && entries[i][j] > 0)
        throw GcmError(GcmError::Kind::PositiveOffDiagonal, i, j,
                       "PositiveOffDiagonal(" + std::to_string(i) + "," + std::to_string(j) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && (entries[i][j] == 0) != (entries[j][i] == 0))
        throw GcmError(GcmError::Kind::ZeroAsymmetry, i, j,
                       "ZeroAsymmetry(" + std::to_string(i) + "," + std::to_string(j) + ")");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw GcmError(GcmError::Kind::Parse, -1, -1, "label count does not match size");
  GeneralizedCartanMatrix g;
  g.a_ = std::move(entries);
  g.labels_ = std::move(labels);
  return g;
}

int GeneralizedCartanMatrix::max_abs_entry() const {
  int m = 0;
  for (const auto& row : a_)
    for (int x : row) m = std::max(m, std::abs(x));
  return m;
}

std::string GeneralizedCartanMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["size"] = size();
  j["matrix"] = a_;
  if (!labels_.empty()) j["labels"] = labels_;
  return j.dump();
}

GeneralizedCartanMatrix GeneralizedCartanMatrix::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw GcmError(GcmError::Kind::Parse, -1, -1, std::string("GCM JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("matrix"))
    throw GcmError(GcmError::Kind::Parse, -1, -1, "GCM JSON needs a \"matrix\" field");
  IntMatrix m;
  std::vector<std::string> labels;
  try {
    m = j.at("matrix").get<IntMatrix>();
    if (j.contains("labels") && !j["labels"].is_null()) labels = j["labels"].get<std::vector<std::string>>();
  } catch (const std::exception& e) {
    throw GcmError(GcmError::Kind::Parse, -1, -1, std::string("GCM JSON field error: ") + e.what());
  }
  if (j.contains("size") && j["size"] != static_cast<int>(m.size()))
    throw GcmError(GcmError::Kind::Parse, -1, -1, "\"size\" does not match matrix");
  return validate(std::move(m), std::move(labels));
}

// ---------------------------------------------------------------- families

const std::vector<AffineFamily>& all_families() {
  static const std::vector<AffineFamily> f = {AffineFamily::A1t,    AffineFamily::B1t,   AffineFamily::C1t,
                                              AffineFamily::D1t,    AffineFamily::A2even, AffineFamily::A2odd,
                                              AffineFamily::D2t};
  return f;
}

std::string family_tag(AffineFamily f) {
  switch (f) {
    case AffineFamily::A1t: return "A1t";
    case AffineFamily::B1t: return "B1t";
    case AffineFamily::C1t: return "C1t";
    case AffineFamily::D1t: return "D1t";
    case AffineFamily::A2even: return "A2even";
    case AffineFamily::A2odd: return "A2odd";
    case AffineFamily::D2t: return "D2t";
  }
  return "?";
}

AffineFamily parse_family(const std::string& tag) {
  for (auto f : all_families())
    if (family_tag(f) == tag) return f;
  throw GcmError(GcmError::Kind::Parse, -1, -1, "unknown affine family '" + tag + "'");
}

std::string family_display_name(AffineFamily f, int l) {
  auto s = [](int k) { return std::to_string(k); };
  switch (f) {
    case AffineFamily::A1t: return "A_{" + s(l) + "}^{(1)}";
    case AffineFamily::B1t: return "B_{" + s(l) + "}^{(1)}";
    case AffineFamily::C1t: return "C_{" + s(l) + "}^{(1)}";
    case AffineFamily::D1t: return "D_{" + s(l + 1) + "}^{(1)}";
    case AffineFamily::A2even: return "A_{" + s(2 * l) + "}^{(2)}";
    case AffineFamily::A2odd: return "A_{" + s(2 * l - 1) + "}^{(2)}";
    case AffineFamily::D2t: return "D_{" + s(l + 1) + "}^{(2)}";
  }
  return "?";
}

int min_rank(AffineFamily f) {
  switch (f) {
    case AffineFamily::A1t: return 2;
    case AffineFamily::B1t: return 3;
    case AffineFamily::C1t: return 2;
    case AffineFamily::D1t: return 3;
    case AffineFamily::A2even: return 2;
    case AffineFamily::A2odd: return 3;
    case AffineFamily::D2t: return 2;
  }
  return 0;
}

int node_count(AffineFamily f, int l) { return f == AffineFamily::D1t ? l + 2 : l + 1; }

int coxeter_exponent(const Gcm& a, int i, int j) {
  if (i == j) throw std::invalid_argument("coxeter_exponent needs i != j");
  switch (a(i, j) * a(j, i)) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

Gcm affine_gcm(AffineFamily f, int l) {
  if (l < min_rank(f))
    throw GcmError(GcmError::Kind::RankTooSmall, l, min_rank(f),
                   family_tag(f) + " needs l >= " + std::to_string(min_rank(f)));
  const int n = node_count(f, l);
  IntMatrix a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  // a[i][j] = aij, a[j][i] = aji
  auto bond = [&](int i, int j, int aij = -1, int aji = -1) {
    a[i][j] = aij;
    a[j][i] = aji;
  };
  switch (f) {
    case AffineFamily::A1t:
      for (int i = 0; i < l; ++i) bond(i, i + 1);
      bond(l, 0);
      break;
    case AffineFamily::B1t:
      bond(0, 2);
      for (int i = 1; i < l - 1; ++i) bond(i, i + 1);
      bond(l - 1, l, -1, -2);
      break;
    case AffineFamily::C1t:
      bond(0, 1, -1, -2);
      for (int i = 1; i < l - 1; ++i) bond(i, i + 1);
      bond(l - 1, l, -2, -1);
      break;
    case AffineFamily::D1t:
      bond(0, 2);
      for (int i = 1; i < l; ++i) bond(i, i + 1);
      bond(l + 1, l - 1);
      break;
    case AffineFamily::A2even:
      bond(0, 1, -2, -1);
      for (int i = 1; i < l - 1; ++i) bond(i, i + 1);
      bond(l - 1, l, -2, -1);
      break;
    case AffineFamily::A2odd:
      bond(0, 2);
      for (int i = 1; i < l - 1; ++i) bond(i, i + 1);
      bond(l - 1, l, -2, -1);
      break;
    case AffineFamily::D2t:
      bond(0, 1, -2, -1);
      for (int i = 1; i < l - 1; ++i) bond(i, i + 1);
      bond(l - 1, l, -1, -2);
      break;
  }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("a_" + std::to_string(i));
  return Gcm::validate(std::move(a), std::move(labels));
}

Gcm affine_gcm(const AffineType& t) { return affine_gcm(t.family, t.l); }

Gcm finite_gcm(const std::string& type) {
  IntMatrix a;
  if (type == "B3")
    a = {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}};
  else if (type == "C3")
    a = {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
  else if (type.size() >= 2 && type[0] == 'A') {
    int n = std::stoi(type.substr(1));
    if (n < 1) throw GcmError(GcmError::Kind::Parse, -1, -1, "bad finite type " + type);
    a.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
      a[i][i] = 2;
      if (i + 1 < n) a[i][i + 1] = a[i + 1][i] = -1;
    }
  } else {
    throw GcmError(GcmError::Kind::Parse, -1, -1, "unsupported finite type " + type);
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < a.size(); ++i) labels.push_back("e_" + std::to_string(i + 1));
  return Gcm::validate(std::move(a), std::move(labels));
}

// ---------------------------------------------------------------- affinity

bool is_connected(const Gcm& a) {
  const int n = a.size();
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j)
      if (!seen[j] && a(i, j) != 0) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
  }
  return count == n;
}

namespace {

// Bareiss fraction-free elimination.
mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

mpz_class principal_minor(const Gcm& a, unsigned mask) {
  std::vector<int> idx;
  for (int i = 0; i < a.size(); ++i)
    if (mask & (1u << i)) idx.push_back(i);
  std::vector<std::vector<mpz_class>> m(idx.size(), std::vector<mpz_class>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) m[r][c] = a(idx[r], idx[c]);
  return determinant(std::move(m));
}

}  // namespace

bool affinity_check(const Gcm& a) {
  if (!is_connected(a)) throw GcmError(GcmError::Kind::Disconnected, -1, -1, "diagram is disconnected");
  const int n = a.size();
  if (n > 20) throw GcmError(GcmError::Kind::Parse, -1, -1, "affinity_check limited to 20 nodes");
  const unsigned full = (1u << n) - 1;
  if (principal_minor(a, full) != 0) return false;
  for (unsigned mask = 1; mask < full; ++mask)
    if (principal_minor(a, mask) <= 0) return false;
  return true;
}

// ---------------------------------------------------------------- classification

namespace {

using Signature = std::vector<std::pair<int, int>>;

std::vector<Signature> signatures(const Gcm& a) {
  std::vector<Signature> out(a.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j)
      if (i != j && a(i, j) != 0) out[i].emplace_back(a(i, j), a(j, i));
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

std::optional<std::vector<int>> match(const Gcm& in, const Gcm& canon) {
  const int n = in.size();
  auto si = signatures(in);
  auto sc = signatures(canon);
  {
    auto a = si, b = sc;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) return true;
    for (int c = 0; c < n; ++c) {
      if (used[c] || si[i] != sc[c]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k)
        ok = in(i, k) == canon(c, perm[k]) && in(k, i) == canon(perm[k], c);
      if (!ok) continue;
      perm[i] = c;
      used[c] = true;
      if (go(i + 1)) return true;
      used[c] = false;
    }
    perm[i] = -1;
    return false;
  };
  if (go(0)) return perm;
  return std::nullopt;
}

}  // namespace

std::optional<Classification> classify_affine(const Gcm& a) {
  const int n = a.size();
  for (auto f : all_families()) {
    int l = f == AffineFamily::D1t ? n - 2 : n - 1;
    if (l < min_rank(f)) continue;
    Gcm canon = affine_gcm(f, l);
    if (auto perm = match(a, canon)) return Classification{{f, l}, *perm};
  }
  return std::nullopt;
}

}  // namespace kmt
