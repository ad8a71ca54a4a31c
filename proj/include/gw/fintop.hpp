#ifndef GW_FINTOP_HPP
#define GW_FINTOP_HPP

#include <string>
#include <utility>
#include <vector>

#include "gw/util.hpp"

namespace gw {

/// A finite topological space: named points plus the full family of opens.
/// The opens family is stored extensionally; finite spaces are Alexandrov,
/// so each point also carries its minimal open neighborhood, which the
/// checking routines lean on.
class FinSpace {
public:
    FinSpace(); // empty space, opens = {∅}
    FinSpace(std::vector<std::string> points, std::vector<Mask> opens);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<std::string>& points() const { return points_; }
    const std::vector<Mask>& opens() const { return opens_; }
    Mask full() const { return size() == 64 ? ~Mask{0} : (Mask{1} << size()) - 1; }

    int index_of(const std::string& name) const; // -1 if absent
    const std::string& name(int i) const { return points_[i]; }

    bool is_open(Mask s) const;
    Mask min_nbhd(int p) const { return min_nbhd_[p]; }

    /// Smallest open containing s (union of the minimal neighborhoods).
    Mask nbhd_hull(Mask s) const;

    Mask mask_of(const std::vector<std::string>& names) const; // throws unknown_point
    std::vector<std::string> names_of(Mask s) const;

    bool operator==(const FinSpace& o) const
    {
        return points_ == o.points_ && opens_ == o.opens_;
    }

private:
    std::vector<std::string> points_; // sorted, unique
    std::vector<Mask> opens_;         // sorted ascending
    std::vector<Mask> min_nbhd_;
};

/// Function data between two finite spaces. Totality is enforced at
/// construction; continuity is a property reported by check_map, so that
/// non-continuous candidates are representable and diagnosable.
struct CtsMap {
    FinSpace source;
    FinSpace target;
    std::vector<int> graph; // graph[src point] = target point

    CtsMap(FinSpace src, FinSpace tgt, std::vector<int> g);

    int operator()(int i) const { return graph[i]; }
    Mask image(Mask s) const;
    Mask preimage(Mask t) const;

    static CtsMap identity(const FinSpace& x);
};

struct MapReport {
    bool continuous = false;
    bool open_map = false;
    bool local_homeo = false;
};

/// Least topology containing the subbasis.
FinSpace make_space(std::vector<std::string> points,
                    const std::vector<std::vector<std::string>>& subbasis);
FinSpace make_space_masks(std::vector<std::string> points, const std::vector<Mask>& subbasis);

MapReport check_map(const CtsMap& f);

/// Quotient by a partition; opens are the subsets with open preimage.
std::pair<FinSpace, CtsMap> quotient_space(const FinSpace& x,
                                           const std::vector<std::vector<std::string>>& classes);
/// Same, with classes given as point -> class id (ids need not be dense).
std::pair<FinSpace, CtsMap> quotient_by_ids(const FinSpace& x, const std::vector<int>& cls);

FinSpace subspace(const FinSpace& x, Mask s);
FinSpace subspace_named(const FinSpace& x, const std::vector<std::string>& names);

struct FiberProduct {
    FinSpace space;                         // point "(x,y)" per matching pair
    CtsMap p1, p2;                          // projections
    std::vector<std::pair<int, int>> pairs; // pair i = (x index, y index)
};

/// Pullback of f and g: pairs (x,y) with f(x)=g(y), subspace-of-product
/// topology. Throws too_large if the opens family would not fit desk scale.
FiberProduct fiber_product(const CtsMap& f, const CtsMap& g);

namespace detail {
// Union-closure of a family of generator sets (BFS, output sensitive).
std::vector<Mask> union_closure(const std::vector<Mask>& gens, std::size_t cap);
void check_atom(const std::string& name);
} // namespace detail

} // namespace gw

#endif
