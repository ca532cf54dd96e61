#ifndef KMT_CARTAN_HPP
#define KMT_CARTAN_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmt {

class GcmError : public std::runtime_error {
 public:
  enum class Kind { NotSquare, DiagonalNotTwo, PositiveOffDiagonal, ZeroAsymmetry, Disconnected, RankTooSmall, Parse };
  GcmError(Kind kind, int i, int j, const std::string& what)
      : std::runtime_error(what), kind(kind), i(i), j(j) {}
  Kind kind;
  int i;
  int j;
};

using IntMatrix = std::vector<std::vector<int>>;

class GeneralizedCartanMatrix {
 public:
  // Checks the three GCM conditions, throwing GcmError on the first violation.
  static GeneralizedCartanMatrix validate(IntMatrix entries, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(a_.size()); }
  int operator()(int i, int j) const { return a_[i][j]; }
  const IntMatrix& entries() const { return a_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int max_abs_entry() const;

  // {"size":n,"matrix":[[...]],"labels":[...]} with no whitespace.
  std::string to_json() const;
  static GeneralizedCartanMatrix from_json(const std::string& text);

  bool operator==(const GeneralizedCartanMatrix& o) const { return a_ == o.a_; }

 private:
  IntMatrix a_;
  std::vector<std::string> labels_;
};

using Gcm = GeneralizedCartanMatrix;

enum class AffineFamily { A1t, B1t, C1t, D1t, A2even, A2odd, D2t };

struct AffineType {
  AffineFamily family;
  int l;
  bool operator==(const AffineType& o) const { return family == o.family && l == o.l; }
};

const std::vector<AffineFamily>& all_families();
std::string family_tag(AffineFamily f);
AffineFamily parse_family(const std::string& tag);
// Kac-style name, e.g. "A_{5}^{(2)}".
std::string family_display_name(AffineFamily f, int l);
int min_rank(AffineFamily f);
int node_count(AffineFamily f, int l);

// m_{ij} in {2,3,4,6}, or 0 for infinite order.
int coxeter_exponent(const Gcm& a, int i, int j);

Gcm affine_gcm(AffineFamily f, int l);
Gcm affine_gcm(const AffineType& t);

// "A2", "B3", "C3", or any "An".
Gcm finite_gcm(const std::string& type);

// True iff det = 0 and all proper principal minors are positive.
// Throws GcmError(Disconnected) for a decomposable matrix.
bool affinity_check(const Gcm& a);
bool is_connected(const Gcm& a);

struct Classification {
  AffineType type;
  // input(i, j) == canonical(perm[i], perm[j])
  std::vector<int> perm;
};

std::optional<Classification> classify_affine(const Gcm& a);

}  // namespace kmt

#endif
