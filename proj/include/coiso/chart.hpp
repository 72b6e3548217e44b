#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coiso {

enum class CoordKind { Polynomial, Periodic, Fibre };

struct BaseCoordinate {
    std::string name;
    bool periodic = false; // period 1

    friend bool operator==(const BaseCoordinate &, const BaseCoordinate &) = default;
};

/// Coordinates on a trivialised chart E|_W = W x R^n of a vector bundle.
///
/// Coordinates are indexed base-first, then fibre. Periodic base coordinates
/// carry Fourier modes; every other coordinate carries polynomial exponents.
/// The exponent vector of a ring term is laid out as
/// [polynomial base | periodic base | fibre], each block in chart order.
class ChartSpec {
  public:
    ChartSpec(std::vector<BaseCoordinate> base, std::vector<std::string> fibre,
              std::optional<double> domain_bound = std::nullopt);

    std::size_t base_dim() const { return base_.size(); }
    std::size_t fibre_dim() const { return fibre_.size(); }
    std::size_t dim() const { return base_.size() + fibre_.size(); }
    std::size_t polynomial_base_count() const { return poly_count_; }
    std::size_t periodic_count() const { return periodic_count_; }

    const std::vector<BaseCoordinate> &base() const { return base_; }
    const std::vector<std::string> &fibre() const { return fibre_; }
    const std::string &name(std::size_t index) const;
    CoordKind kind(std::size_t index) const { return kinds_[index]; }
    bool is_fibre(std::size_t index) const { return index >= base_.size(); }
    std::size_t slot(std::size_t index) const { return slots_[index]; }
    std::size_t fibre_index(std::size_t j) const { return base_.size() + j; }

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws Error(UnknownCoordinate).
    std::size_t index_of(std::string_view name) const;

    /// Bound on the fibre norm defining the tubular domain U; none means U = E.
    const std::optional<double> &domain_bound() const { return domain_bound_; }

    friend bool operator==(const ChartSpec &a, const ChartSpec &b) {
        return a.base_ == b.base_ && a.fibre_ == b.fibre_ && a.domain_bound_ == b.domain_bound_;
    }

  private:
    std::vector<BaseCoordinate> base_;
    std::vector<std::string> fibre_;
    std::optional<double> domain_bound_;
    std::vector<CoordKind> kinds_;
    std::vector<std::size_t> slots_;
    std::size_t poly_count_ = 0;
    std::size_t periodic_count_ = 0;
};

using Chart = std::shared_ptr<const ChartSpec>;

Chart make_chart(std::vector<BaseCoordinate> base, std::vector<std::string> fibre,
                 std::optional<double> domain_bound = std::nullopt);

bool same_chart(const Chart &a, const Chart &b);
void require_same_chart(const Chart &a, const Chart &b);

} // namespace coiso
