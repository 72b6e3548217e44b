#include "coiso/chart.hpp"

#include "coiso/error.hpp"

#include <set>

namespace coiso {

ChartSpec::ChartSpec(std::vector<BaseCoordinate> base, std::vector<std::string> fibre,
                     std::optional<double> domain_bound)
    : base_(std::move(base)), fibre_(std::move(fibre)), domain_bound_(domain_bound) {
    std::set<std::string> seen;
    auto check = [&](const std::string &n) {
        if (n.empty())
            throw Error(ErrorCode::InvalidArgument, "empty coordinate name");
        if (!seen.insert(n).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate coordinate name '" + n + "'");
    };
    for (const auto &b : base_)
        check(b.name);
    for (const auto &f : fibre_)
        check(f);
    if (dim() > 64)
        throw Error(ErrorCode::InvalidArgument, "at most 64 coordinates are supported");
    if (domain_bound_ && !(*domain_bound_ > 0.0))
        throw Error(ErrorCode::InvalidArgument, "domain bound must be positive");

    for (const auto &b : base_)
        (b.periodic ? periodic_count_ : poly_count_)++;
    std::size_t next_poly = 0;
    std::size_t next_periodic = poly_count_;
    for (const auto &b : base_) {
        kinds_.push_back(b.periodic ? CoordKind::Periodic : CoordKind::Polynomial);
        slots_.push_back(b.periodic ? next_periodic++ : next_poly++);
    }
    for (std::size_t j = 0; j < fibre_.size(); ++j) {
        kinds_.push_back(CoordKind::Fibre);
        slots_.push_back(base_.size() + j);
    }
}

const std::string &ChartSpec::name(std::size_t index) const {
    return index < base_.size() ? base_[index].name : fibre_[index - base_.size()];
}

std::optional<std::size_t> ChartSpec::find(std::string_view n) const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (name(i) == n)
            return i;
    return std::nullopt;
}

std::size_t ChartSpec::index_of(std::string_view n) const {
    if (auto i = find(n))
        return *i;
    throw Error(ErrorCode::UnknownCoordinate, "unknown coordinate '" + std::string(n) + "'");
}

Chart make_chart(std::vector<BaseCoordinate> base, std::vector<std::string> fibre,
                 std::optional<double> domain_bound) {
    return std::make_shared<const ChartSpec>(std::move(base), std::move(fibre), domain_bound);
}

bool same_chart(const Chart &a, const Chart &b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return *a == *b;
}

void require_same_chart(const Chart &a, const Chart &b) {
    if (!same_chart(a, b))
        throw Error(ErrorCode::ChartMismatch, "operands live on different charts");
}

} // namespace coiso
