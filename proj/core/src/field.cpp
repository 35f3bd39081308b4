#include "convnls/field.hpp"

#include <cmath>

#include "convnls/errors.hpp"

namespace convnls {

Field::Field(GridSpec g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
        throw InvalidGrid("field size does not match grid");
    check_finite();
}

Field Field::unchecked(GridSpec g, std::vector<cplx> v) {
    Field f;
    f.grid = std::move(g);
    f.values = std::move(v);
    if (f.values.size() != f.grid.size())
        throw InvalidGrid("field size does not match grid");
    return f;
}

Field Field::zero(const GridSpec& g) {
    return unchecked(g, std::vector<cplx>(g.size(), cplx{0.0, 0.0}));
}

bool Field::is_finite() const {
    for (const cplx& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void Field::check_finite() const {
    if (!is_finite()) throw NonFinite("field contains NaN or Inf entries");
}

Spectrum::Spectrum(GridSpec g, std::vector<cplx> c) : grid(std::move(g)), coeffs(std::move(c)) {
    if (coeffs.size() != grid.size())
        throw InvalidGrid("spectrum size does not match grid");
}

Spectrum Spectrum::zero(const GridSpec& g) {
    return Spectrum(g, std::vector<cplx>(g.size(), cplx{0.0, 0.0}));
}

} // namespace convnls
