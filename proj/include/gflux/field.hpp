#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace gflux {

// Cell-centered data with a ghost halo.  Interior cells are addressed by
// (i, j) with i in [0, nx), j in [0, ny); the halo extends the valid range to
// [-ghost, nx+ghost) x [-ghost, ny+ghost).  Components of a cell are stored
// contiguously.
class Field {
 public:
  Field() = default;
  Field(int nx, int ny, int ghost, int ncomp)
      : nx_(nx),
        ny_(ny),
        ghost_(ghost),
        ncomp_(ncomp),
        stride_(nx + 2 * ghost),
        data_(static_cast<std::size_t>(stride_) * (ny + 2 * ghost) * ncomp, 0.0) {
    assert(nx >= 1 && ny >= 1 && ghost >= 0 && ncomp >= 1);
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int ghost() const { return ghost_; }
  int ncomp() const { return ncomp_; }

  double& operator()(int i, int j, int c) { return data_[offset(i, j, c)]; }
  double operator()(int i, int j, int c) const { return data_[offset(i, j, c)]; }

  std::span<double> cell(int i, int j) {
    return {data_.data() + offset(i, j, 0), static_cast<std::size_t>(ncomp_)};
  }
  std::span<const double> cell(int i, int j) const {
    return {data_.data() + offset(i, j, 0), static_cast<std::size_t>(ncomp_)};
  }

  // Whole storage including ghosts, for linear-algebra style updates.
  std::span<double> raw() { return data_; }
  std::span<const double> raw() const { return data_; }

  bool same_shape(const Field& o) const {
    return nx_ == o.nx_ && ny_ == o.ny_ && ghost_ == o.ghost_ && ncomp_ == o.ncomp_;
  }

  void fill(double v) { data_.assign(data_.size(), v); }

 private:
  std::size_t offset(int i, int j, int c) const {
    assert(i >= -ghost_ && i < nx_ + ghost_);
    assert(j >= -ghost_ && j < ny_ + ghost_);
    assert(c >= 0 && c < ncomp_);
    return (static_cast<std::size_t>(j + ghost_) * stride_ +
            static_cast<std::size_t>(i + ghost_)) *
               ncomp_ +
           static_cast<std::size_t>(c);
  }

  int nx_ = 0, ny_ = 0, ghost_ = 0, ncomp_ = 0;
  int stride_ = 0;
  std::vector<double> data_;
};

}  // namespace gflux
