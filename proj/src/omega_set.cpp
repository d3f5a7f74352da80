#include "idealab/omega_set.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace idealab {

FinSet fs_normalize(FinSet v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

FinSet fs_union(const FinSet& a, const FinSet& b) {
    FinSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

FinSet fs_intersect(const FinSet& a, const FinSet& b) {
    FinSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

FinSet fs_minus(const FinSet& a, const FinSet& b) {
    FinSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool fs_contains(const FinSet& a, Nat x) {
    return std::binary_search(a.begin(), a.end(), x);
}

bool fs_subset(const FinSet& a, const FinSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool fs_disjoint(const FinSet& a, const FinSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return false;
    }
    return true;
}

struct OmegaSet::Impl {
    Kind kind;
    FinSet explicit_set;      // Finite: elements; Cofinite: excluded
    BlockStreamFn blocks;     // BlockUnion
    MembershipFn member;      // Program
    std::string name;
    std::vector<Nat> params;  // Program formula parameters
};

namespace {

// Walks a block stream up to positions < limit, validating order lazily.
// Calls visit(block) for each block whose lo < limit.
void walk_blocks(const BlockStreamFn& blocks, Nat limit,
                 const std::function<void(const Block&)>& visit) {
    Nat prev_end = 0;
    bool first = true;
    for (std::size_t k = 0;; ++k) {
        auto b = blocks(k);
        if (!b) break;
        if (b->hi <= b->lo) throw std::invalid_argument("empty or inverted block");
        if (!first && b->lo < prev_end)
            throw std::invalid_argument("block stream not in increasing position order");
        first = false;
        prev_end = b->hi;
        if (b->lo >= limit) break;
        visit(*b);
    }
}

} // namespace

OmegaSet OmegaSet::finite(FinSet elements) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Finite;
    impl->explicit_set = fs_normalize(std::move(elements));
    return OmegaSet(impl);
}

OmegaSet OmegaSet::cofinite(FinSet excluded) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Cofinite;
    impl->explicit_set = fs_normalize(std::move(excluded));
    return OmegaSet(impl);
}

OmegaSet OmegaSet::block_union(BlockStreamFn blocks) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::BlockUnion;
    impl->blocks = std::move(blocks);
    return OmegaSet(impl);
}

OmegaSet OmegaSet::block_union(std::vector<Block> blocks) {
    auto list = std::make_shared<std::vector<Block>>(std::move(blocks));
    return block_union([list](std::size_t k) -> std::optional<Block> {
        if (k >= list->size()) return std::nullopt;
        return (*list)[k];
    });
}

OmegaSet OmegaSet::program(std::string name, MembershipFn fn) {
    return program(std::move(name), {}, std::move(fn));
}

OmegaSet OmegaSet::program(std::string name, std::vector<Nat> params, MembershipFn fn) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Program;
    impl->member = std::move(fn);
    impl->name = std::move(name);
    impl->params = std::move(params);
    return OmegaSet(impl);
}

const std::string& OmegaSet::program_name() const {
    if (impl_->kind != Kind::Program) throw std::logic_error("not a Program omega-set");
    return impl_->name;
}

const std::vector<Nat>& OmegaSet::program_params() const {
    if (impl_->kind != Kind::Program) throw std::logic_error("not a Program omega-set");
    return impl_->params;
}

OmegaSet::Kind OmegaSet::kind() const { return impl_->kind; }

bool OmegaSet::contains(Nat n) const {
    switch (impl_->kind) {
        case Kind::Finite:
            return fs_contains(impl_->explicit_set, n);
        case Kind::Cofinite:
            return !fs_contains(impl_->explicit_set, n);
        case Kind::BlockUnion: {
            bool found = false;
            walk_blocks(impl_->blocks, n + 1, [&](const Block& b) {
                if (b.lo <= n && n < b.hi) found = true;
            });
            return found;
        }
        case Kind::Program:
            return impl_->member(n);
    }
    return false;
}

FinSet OmegaSet::prefix(Nat horizon) const {
    FinSet out;
    switch (impl_->kind) {
        case Kind::Finite:
            for (Nat x : impl_->explicit_set) {
                if (x < horizon) out.push_back(x);
            }
            break;
        case Kind::Cofinite:
            out.reserve(horizon);
            for (Nat x = 0; x < horizon; ++x) {
                if (!fs_contains(impl_->explicit_set, x)) out.push_back(x);
            }
            break;
        case Kind::BlockUnion:
            walk_blocks(impl_->blocks, horizon, [&](const Block& b) {
                for (Nat x = b.lo; x < b.hi && x < horizon; ++x) out.push_back(x);
            });
            break;
        case Kind::Program:
            for (Nat x = 0; x < horizon; ++x) {
                if (impl_->member(x)) out.push_back(x);
            }
            break;
    }
    return out;
}

OmegaSet OmegaSet::complement() const {
    switch (impl_->kind) {
        case Kind::Finite:
            return cofinite(impl_->explicit_set);
        case Kind::Cofinite:
            return finite(impl_->explicit_set);
        default: {
            OmegaSet self = *this;
            return program("not(" + describe() + ")", [self](Nat n) { return !self.contains(n); });
        }
    }
}

std::vector<Block> OmegaSet::blocks_below(Nat horizon, bool must_end) const {
    if (impl_->kind != Kind::BlockUnion) throw std::logic_error("not a BlockUnion omega-set");
    std::vector<Block> out;
    Nat prev_end = 0;
    bool first = true;
    for (std::size_t k = 0;; ++k) {
        auto b = impl_->blocks(k);
        if (!b) break;
        if (b->hi <= b->lo) throw std::invalid_argument("empty or inverted block");
        if (!first && b->lo < prev_end)
            throw std::invalid_argument("block stream not in increasing position order");
        first = false;
        prev_end = b->hi;
        if (b->lo >= horizon) {
            if (must_end)
                throw std::invalid_argument("block stream continues past the horizon");
            break;
        }
        out.push_back(*b);
    }
    return out;
}

const FinSet& OmegaSet::finite_elements() const {
    if (impl_->kind != Kind::Finite) throw std::logic_error("not a Finite omega-set");
    return impl_->explicit_set;
}

const FinSet& OmegaSet::cofinite_excluded() const {
    if (impl_->kind != Kind::Cofinite) throw std::logic_error("not a Cofinite omega-set");
    return impl_->explicit_set;
}

namespace {

bool is_perfect_power(Nat n, unsigned e) {
    if (n == 0) return true;
    Nat r = 0;
    Nat hi = n;
    // Binary search for the integer e-th root.
    Nat lo = 0;
    while (lo <= hi) {
        Nat mid = lo + (hi - lo) / 2;
        Nat acc = 1;
        bool over = false;
        for (unsigned i = 0; i < e; ++i) {
            if (mid != 0 && acc > n / mid) {
                over = true;
                break;
            }
            acc *= mid;
        }
        if (!over && acc == n) {
            r = mid;
            return true;
        }
        if (over || acc > n) {
            if (mid == 0) break;
            hi = mid - 1;
        } else {
            lo = mid + 1;
        }
    }
    (void)r;
    return false;
}

bool is_prime(Nat n) {
    if (n < 2) return false;
    for (Nat d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_factorial(Nat n) {
    Nat f = 1;
    for (Nat k = 1; f <= n; ++k) {
        if (f == n) return true;
        if (f > std::numeric_limits<Nat>::max() / k) return false;
        f *= k;
    }
    return f == n;
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// The binary string coded by n under the length-lexicographic bijection:
// bits of n+1 below the leading 1.
std::string coded_string(Nat n) {
    Nat v = n + 1;
    std::string rev;
    while (v > 1) {
        rev.push_back(static_cast<char>('0' + (v & 1)));
        v >>= 1;
    }
    return std::string(rev.rbegin(), rev.rend());
}

} // namespace

OmegaSet named_program(const std::string& name, const std::vector<Nat>& params) {
    auto need = [&](std::size_t count) {
        if (params.size() < count)
            throw std::invalid_argument("program '" + name + "' needs " + std::to_string(count) +
                                        " parameter(s)");
    };
    if (name == "evens") return OmegaSet::program(name, [](Nat n) { return n % 2 == 0; });
    if (name == "odds") return OmegaSet::program(name, [](Nat n) { return n % 2 == 1; });
    if (name == "all") return OmegaSet::program(name, [](Nat) { return true; });
    if (name == "none") return OmegaSet::program(name, [](Nat) { return false; });
    if (name == "squares") return OmegaSet::program(name, [](Nat n) { return is_perfect_power(n, 2); });
    if (name == "cubes") return OmegaSet::program(name, [](Nat n) { return is_perfect_power(n, 3); });
    if (name == "powers_of_two")
        return OmegaSet::program(name, [](Nat n) { return n != 0 && (n & (n - 1)) == 0; });
    if (name == "pow2_minus_1")
        return OmegaSet::program(name, [](Nat n) { return ((n + 1) & n) == 0; });
    if (name == "factorials") return OmegaSet::program(name, [](Nat n) { return is_factorial(n); });
    if (name == "primes") return OmegaSet::program(name, [](Nat n) { return is_prime(n); });
    if (name == "residue") {
        need(2);
        Nat mod = params[0], rem = params[1];
        if (mod == 0) throw std::invalid_argument("residue modulus must be positive");
        return OmegaSet::program("residue", {mod, rem},
                                 [mod, rem](Nat n) { return n % mod == rem % mod; });
    }
    if (name == "bit") {
        need(1);
        Nat k = params[0];
        if (k >= 64) throw std::invalid_argument("bit index too large");
        return OmegaSet::program("bit", {k}, [k](Nat n) { return (n >> k) & 1; });
    }
    if (name == "hash_dense") {
        need(3);
        Nat seed = params[0], keep = params[1], den = params[2];
        if (den == 0) throw std::invalid_argument("hash_dense denominator must be positive");
        return OmegaSet::program(
            "hash_dense", {seed, keep, den},
            [seed, keep, den](Nat n) { return mix64(seed ^ (n * 0x9e3779b97f4a7c15ULL)) % den < keep; });
    }
    if (name == "alternating_string") {
        // Codes of binary strings 0101... or 1010...
        return OmegaSet::program(name, [](Nat n) {
            std::string s = coded_string(n);
            for (std::size_t i = 1; i < s.size(); ++i) {
                if (s[i] == s[i - 1]) return false;
            }
            return true;
        });
    }
    if (name == "low_weight_string") {
        // Codes of binary strings with at most one '1'.
        return OmegaSet::program(name, [](Nat n) {
            std::string s = coded_string(n);
            int ones = 0;
            for (char c : s) ones += c == '1';
            return ones <= 1;
        });
    }
    throw std::invalid_argument("unknown program formula: " + name);
}

OmegaSet omega_intersect(const OmegaSet& a, const OmegaSet& b) {
    if (a.kind() == OmegaSet::Kind::Finite)
        return OmegaSet::finite([&] {
            FinSet out;
            for (Nat x : a.finite_elements())
                if (b.contains(x)) out.push_back(x);
            return out;
        }());
    if (b.kind() == OmegaSet::Kind::Finite) return omega_intersect(b, a);
    OmegaSet lhs = a, rhs = b;
    return OmegaSet::program("and(" + a.describe() + "," + b.describe() + ")",
                             [lhs, rhs](Nat n) { return lhs.contains(n) && rhs.contains(n); });
}

std::string OmegaSet::describe() const {
    std::ostringstream os;
    switch (impl_->kind) {
        case Kind::Finite: {
            os << "finite{";
            for (std::size_t i = 0; i < impl_->explicit_set.size(); ++i) {
                if (i) os << ",";
                os << impl_->explicit_set[i];
            }
            os << "}";
            break;
        }
        case Kind::Cofinite: {
            os << "cofinite-excluding{";
            for (std::size_t i = 0; i < impl_->explicit_set.size(); ++i) {
                if (i) os << ",";
                os << impl_->explicit_set[i];
            }
            os << "}";
            break;
        }
        case Kind::BlockUnion:
            os << "blocks";
            break;
        case Kind::Program: {
            os << "program:" << impl_->name;
            if (!impl_->params.empty()) {
                os << "(";
                for (std::size_t i = 0; i < impl_->params.size(); ++i) {
                    if (i) os << ",";
                    os << impl_->params[i];
                }
                os << ")";
            }
            break;
        }
    }
    return os.str();
}

} // namespace idealab
