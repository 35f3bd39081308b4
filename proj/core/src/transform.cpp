#include "convnls/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace convnls {

namespace {

// FFTW plans per (dim, N); planner access is serialized, execution via the
// new-array interface is thread-safe. FFTW_ESTIMATE keeps planning
// deterministic run to run.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    PlanPair get(int dim, int n) {
        std::scoped_lock lk(mu_);
        auto key = std::pair<int, int>(dim, n);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        std::size_t total = 1;
        for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
        fftw_complex* a = fftw_alloc_complex(total);
        fftw_complex* b = fftw_alloc_complex(total);
        int dims[4] = {n, n, n, n};
        PlanPair p;
        p.fwd = fftw_plan_dft(dim, dims, a, b, FFTW_FORWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.bwd = fftw_plan_dft(dim, dims, a, b, FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(a);
        fftw_free(b);
        cache_[key] = p;
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, PlanPair> cache_;
};

inline fftw_complex* as_fftw(std::vector<cplx>& v) {
    return reinterpret_cast<fftw_complex*>(v.data());
}

// (-1)^(sum of per-axis indices): re-centers the box at the origin so the
// coefficients are taken against e^{i xi.x} with x in [-L/2, L/2)^n.
void apply_center_phase(const GridSpec& g, std::vector<cplx>& v, double scale) {
    const int dim = g.dim();
    const int n = g.points_per_axis();
    std::array<int, 4> idx{};
    int parity = 0;
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        v[flat] *= parity ? -scale : scale;
        int d = dim - 1;
        while (d >= 0) {
            // one flip covers both +1 and the even-n rollover n-1 -> 0
            parity ^= 1;
            if (++idx[d] < n) break;
            idx[d] = 0;
            --d;
        }
    }
}

} // namespace

Spectrum transform(const Field& u) {
    const GridSpec& g = u.grid;
    PlanPair p = PlanCache::instance().get(g.dim(), g.points_per_axis());
    std::vector<cplx> in = u.values;
    std::vector<cplx> out(in.size());
    fftw_execute_dft(p.fwd, as_fftw(in), as_fftw(out));
    apply_center_phase(g, out, 1.0 / static_cast<double>(g.size()));
    return Spectrum(g, std::move(out));
}

Field inverse(const Spectrum& s) {
    const GridSpec& g = s.grid;
    PlanPair p = PlanCache::instance().get(g.dim(), g.points_per_axis());
    std::vector<cplx> in = s.coeffs;
    apply_center_phase(g, in, 1.0);
    std::vector<cplx> out(in.size());
    fftw_execute_dft(p.bwd, as_fftw(in), as_fftw(out));
    return Field::unchecked(g, std::move(out));
}

} // namespace convnls
