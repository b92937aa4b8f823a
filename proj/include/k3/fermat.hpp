#pragma once

#include <array>
#include <map>
#include <optional>
#include <unordered_map>

#include "k3/exact.hpp"
#include "k3/gf.hpp"
#include "k3/group.hpp"

namespace k3 {

using Point3 = std::array<GF9, 4>;  // [w:x:y:z]
using Mat4 = std::array<std::array<GF9, 4>, 4>;

Point3 normalize(Point3 p);  // first nonzero coordinate set to 1
std::uint32_t point_key(const Point3& p);
bool on_fermat(const Point3& p);

class ProjLine {
 public:
  ProjLine() = default;
  // row space of the two rows (throws BadInput if rank < 2)
  static ProjLine from_rows(const std::array<GF9, 4>& r0, const std::array<GF9, 4>& r1);

  const std::array<std::array<GF9, 4>, 2>& rows() const { return rows_; }
  // [1:t] for t = 0..8 in index order, then [0:1]
  std::array<Point3, 10> points() const;
  bool contains(const Point3& p) const;
  // two independent linear forms vanishing on the line
  std::array<std::array<GF9, 4>, 2> equations() const;
  std::uint32_t key() const;
  ProjLine transformed(const Mat4& m) const;  // row space of R·M
  ProjLine frobenius() const;                 // entries cubed

  friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.rows_ == b.rows_; }
  friend bool operator<(const ProjLine& a, const ProjLine& b) { return a.key() < b.key(); }

 private:
  std::array<std::array<GF9, 4>, 2> rows_{};
};

bool lines_meet(const ProjLine& a, const ProjLine& b);

struct LineScan {
  std::vector<ProjLine> lines;
  std::size_t scanned = 0;
};

// lines of P³(F9) on w⁴+x⁴+y⁴+z⁴ = 0, in RREF pivot-pattern order
LineScan enumerate_lines_on_fermat();
std::vector<Point3> surface_points();
std::vector<std::vector<int>> intersection_matrix(const std::vector<ProjLine>& lines);

// homogeneous polynomials in (w,x,y,z); a map P³ ⇢ Pⁿ
struct HomogeneousPoly {
  std::vector<std::pair<std::array<int, 4>, GF9>> terms;
  GF9 eval(const Point3& p) const;
  int degree() const;
};
using HomogeneousMap = std::vector<HomogeneousPoly>;

// lines on which every component vanishes
std::vector<int> base_locus(const std::vector<ProjLine>& lines, const HomogeneousMap& f);
// image point of a line contracted by f (all non-base points share one normalized value)
std::optional<std::vector<GF9>> contracted_image(const ProjLine& line, const HomogeneousMap& f);

struct FramePins {
  std::array<GF9, 4> plane{};  // linear form
  std::vector<int> plane_labels;
  struct BaseLocus {
    HomogeneousMap map;
    std::vector<int> labels;
  };
  struct Images {
    HomogeneousMap map;
    std::map<int, std::vector<GF9>> images;  // label → normalized image point
  };
  std::vector<BaseLocus> base_loci;
  std::vector<Images> images;
  std::vector<std::pair<int, int>> frobenius_pairs;
  std::vector<std::vector<int>> chains;  // consecutive labels meet, others do not
};

struct LineConfiguration {
  std::vector<ProjLine> lines;
  std::vector<std::vector<int>> intersection;
  std::vector<int> basis;  // geometric indices of the 22 basis lines
  IntMatrix N;
  RatMatrix N_inv;
  std::vector<IntVec> classes;  // class of each geometric line in basis coordinates
  std::unordered_map<std::uint32_t, int> index;

  int line_index(const ProjLine& l) const;
};

struct FrameResult {
  std::vector<int> basis;       // geometric index for each basis position
  std::size_t solutions = 0;    // number of basis tuples satisfying every pin
  bool truncated = false;       // search stopped at the solution cap
  bool unique() const { return solutions == 1 && !truncated; }
};

// basis_labels: paper labels of the 22 basis positions
FrameResult recover_frame(const std::vector<ProjLine>& lines, const std::vector<std::vector<int>>& I,
                          const IntMatrix& N, const std::vector<int>& basis_labels, const FramePins& pins,
                          std::size_t solution_cap = 64);

// lexicographically first tuple with Gram N (no pins)
FrameResult first_frame(const std::vector<ProjLine>& lines, const std::vector<std::vector<int>>& I,
                        const IntMatrix& N);

LineConfiguration make_configuration(const std::vector<ProjLine>& lines, const std::vector<std::vector<int>>& I,
                                     const std::vector<int>& basis, const IntMatrix& N);

IntVec class_of_line(const LineConfiguration& cfg, int line);

Mat4 mat4_mul(const Mat4& a, const Mat4& b);
Mat4 mat4_conj_transpose(const Mat4& a);  // entries cubed, transposed
bool is_unitary(const Mat4& m);
Perm line_permutation(const LineConfiguration& cfg, const Mat4& m);
IntMatrix isometry_from_permutation(const LineConfiguration& cfg, const Perm& p);

struct PGUGenerator {
  Mat4 matrix;
  Perm perm;
  IntMatrix isometry;
};

std::vector<Mat4> pgu_generator_matrices();
std::vector<PGUGenerator> pgu_generators(const LineConfiguration& cfg);
Perm frobenius_permutation(const LineConfiguration& cfg);
IntMatrix frobenius_isometry(const LineConfiguration& cfg);

}  // namespace k3
