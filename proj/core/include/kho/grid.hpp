#ifndef KHO_GRID_HPP
#define KHO_GRID_HPP

namespace kho {

// Rectangular phase-space grid. Cells are indexed (ix, ip) with centers
// returned by x_center/p_center; ix runs along X, ip along P.
struct GridSpec {
    double x_min = -4.0;
    double x_max = 4.0;
    int nx = 128;
    double p_min = -4.0;
    double p_max = 4.0;
    int np = 128;

    double dx() const { return (x_max - x_min) / nx; }
    double dp() const { return (p_max - p_min) / np; }
    double x_center(int ix) const { return x_min + (ix + 0.5) * dx(); }
    double p_center(int ip) const { return p_min + (ip + 0.5) * dp(); }
    int cells() const { return nx * np; }

    // Cell containing (x, p), or -1 if outside the grid.
    int x_index(double x) const;
    int p_index(double p) const;

    // Throws config_error unless both resolutions are >= 2 and the
    // ranges are nonempty.
    void validate() const;
};

}  // namespace kho

#endif
