#ifndef IGNIS_FIELD_HPP
#define IGNIS_FIELD_HPP

#include <cassert>
#include <cstddef>
#include <vector>

namespace ignis {

/// Node-indexed 2D scalar array with ghost layers.
///
/// Interior nodes are addressed by (i, j) with i in [0, nx) and j in [0, ny);
/// ghost nodes extend the index range to [-g, nx+g) x [-g, ny+g). Storage is
/// row-major over the padded box so a whole field is one contiguous buffer.
class Field {
public:
    Field() = default;
    Field(int nx, int ny, int g, double init = 0.0)
        : nx_(nx), ny_(ny), g_(g), sx_(nx + 2 * g),
          data_(static_cast<std::size_t>(nx + 2 * g) * (ny + 2 * g), init) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int ghosts() const { return g_; }

    double& operator()(int i, int j) {
        assert(i >= -g_ && i < nx_ + g_ && j >= -g_ && j < ny_ + g_);
        return data_[idx(i, j)];
    }
    double operator()(int i, int j) const {
        assert(i >= -g_ && i < nx_ + g_ && j >= -g_ && j < ny_ + g_);
        return data_[idx(i, j)];
    }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    bool same_shape(const Field& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && g_ == o.g_;
    }

    void fill(double v) { data_.assign(data_.size(), v); }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j + g_) * sx_ + (i + g_);
    }

    int nx_ = 0;
    int ny_ = 0;
    int g_ = 0;
    int sx_ = 0;
    std::vector<double> data_;
};

/// A fixed-size bundle of Fields sharing one grid shape, one per solution
/// component (species partial densities, momenta, energy, ...).
class FieldSet {
public:
    FieldSet() = default;
    FieldSet(int ncomp, int nx, int ny, int g)
        : comps_(static_cast<std::size_t>(ncomp), Field(nx, ny, g)) {}

    int ncomp() const { return static_cast<int>(comps_.size()); }
    Field& operator[](int c) { return comps_[static_cast<std::size_t>(c)]; }
    const Field& operator[](int c) const { return comps_[static_cast<std::size_t>(c)]; }

    int nx() const { return comps_.empty() ? 0 : comps_[0].nx(); }
    int ny() const { return comps_.empty() ? 0 : comps_[0].ny(); }
    int ghosts() const { return comps_.empty() ? 0 : comps_[0].ghosts(); }

private:
    std::vector<Field> comps_;
};

} // namespace ignis

#endif
