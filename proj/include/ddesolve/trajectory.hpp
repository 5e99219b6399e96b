#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dde {

/// Solution on the uniform grid t_n = t0 + n*h. Node states are stored
/// row-major; node n approximates y(t_n). The trajectory doubles as the
/// lookup store for delayed states, so the full sequence is kept.
class Trajectory {
public:
    Trajectory(double h, std::size_t dim, double t0 = 0.0)
        : h_(h), t0_(t0), dim_(dim) {}

    double h() const noexcept { return h_; }
    double t0() const noexcept { return t0_; }
    std::size_t dim() const noexcept { return dim_; }

    /// Number of stored nodes (N+1 after a full solve over [0, N*h]).
    std::size_t node_count() const noexcept { return data_.size() / dim_; }

    double time_at(std::size_t n) const noexcept {
        return t0_ + static_cast<double>(n) * h_;
    }

    std::span<const double> state(std::size_t n) const noexcept {
        return {data_.data() + n * dim_, dim_};
    }

    std::span<const double> back() const noexcept {
        return state(node_count() - 1);
    }

    void push_back(std::span<const double> y) {
        data_.insert(data_.end(), y.begin(), y.end());
    }

    void reserve(std::size_t nodes) { data_.reserve(nodes * dim_); }

    /// Row-major node data, node_count()*dim() values.
    const std::vector<double>& data() const noexcept { return data_; }

private:
    double h_;
    double t0_;
    std::size_t dim_;
    std::vector<double> data_;
};

}  // namespace dde
