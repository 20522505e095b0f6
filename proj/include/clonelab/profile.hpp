#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clonelab {

// Candidate subsets are bitmasks over the indices of one profile.
using CandSet = std::uint64_t;
inline constexpr int kMaxCandidates = 64;

// Candidate indices, best first.
using Ranking = std::vector<int>;

inline int count(CandSet s) { return std::popcount(s); }
inline CandSet bit(int c) { return CandSet{1} << c; }
inline bool has(CandSet s, int c) { return (s >> c) & 1U; }
inline int lowest(CandSet s) { return std::countr_zero(s); }
inline CandSet full_set(int m) { return m >= 64 ? ~CandSet{0} : (bit(m) - 1); }

inline std::vector<int> members(CandSet s) {
    std::vector<int> out;
    while (s) {
        out.push_back(lowest(s));
        s &= s - 1;
    }
    return out;
}

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by operations whose preconditions are violated (unknown candidate, bad index, ...).
class ProfileError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Group {
    Ranking order;
    long count = 1;
};

class Profile {
public:
    Profile(std::vector<std::string> names, std::vector<Group> groups)
        : names_(std::move(names)), groups_(std::move(groups)) {
        const int m = static_cast<int>(names_.size());
        if (m == 0) throw ProfileError("profile needs at least one candidate");
        if (m > kMaxCandidates) throw ProfileError("too many candidates");
        for (int i = 0; i < m; ++i) {
            if (!valid_name(names_[i])) throw ProfileError("bad candidate name '" + names_[i] + "'");
            for (int j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw ProfileError("duplicate candidate '" + names_[i] + "'");
        }
        if (groups_.empty()) throw ProfileError("profile needs at least one voter");
        for (const auto& g : groups_) {
            if (g.count <= 0) throw ProfileError("multiplicity must be positive");
            if (static_cast<int>(g.order.size()) != m) throw ProfileError("ranking does not cover the candidate set");
            CandSet seen = 0;
            for (int c : g.order) {
                if (c < 0 || c >= m || has(seen, c)) throw ProfileError("ranking is not a permutation");
                seen |= bit(c);
            }
            n_ += g.count;
        }
    }

    static bool valid_name(std::string_view s) {
        if (s.empty()) return false;
        for (char ch : s)
            if (ch == '>' || ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') return false;
        return true;
    }

    int m() const { return static_cast<int>(names_.size()); }
    long n() const { return n_; }
    CandSet all() const { return full_set(m()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int c) const { return names_.at(c); }
    const std::vector<Group>& groups() const { return groups_; }

    int index_of(std::string_view s) const {
        for (int i = 0; i < m(); ++i)
            if (names_[i] == s) return i;
        return -1;
    }
    int require(std::string_view s) const {
        int i = index_of(s);
        if (i < 0) throw ProfileError("unknown candidate '" + std::string(s) + "'");
        return i;
    }

    // Voter i (1-based) after expanding multiplicities in listed order.
    const Ranking& voter(long i) const {
        if (i < 1 || i > n_) throw ProfileError("voter index out of range");
        for (const auto& g : groups_) {
            if (i <= g.count) return g.order;
            i -= g.count;
        }
        throw ProfileError("voter index out of range");
    }

    // Sorted lexicographically.
    std::vector<std::string> names_of(CandSet s) const {
        std::vector<std::string> out;
        for (int c : members(s)) out.push_back(names_[c]);
        std::sort(out.begin(), out.end());
        return out;
    }
    template <class Range>
    CandSet set_of(const Range& ns) const {
        CandSet s = 0;
        for (const auto& x : ns) s |= bit(require(x));
        return s;
    }
    std::vector<std::string> ranking_names(const Ranking& r) const {
        std::vector<std::string> out;
        for (int c : r) out.push_back(names_[c]);
        return out;
    }
    Ranking ranking_of(const std::vector<std::string>& ns) const {
        Ranking r;
        for (const auto& x : ns) r.push_back(require(x));
        return r;
    }

    friend bool operator==(const Profile& a, const Profile& b) {
        if (a.names_ != b.names_ || a.groups_.size() != b.groups_.size()) return false;
        for (std::size_t k = 0; k < a.groups_.size(); ++k)
            if (a.groups_[k].order != b.groups_[k].order || a.groups_[k].count != b.groups_[k].count) return false;
        return true;
    }

private:
    std::vector<std::string> names_;
    std::vector<Group> groups_;
    long n_ = 0;
};

// Translate a candidate set of `from` into the matching names of `to` (names absent in `to` are dropped).
inline CandSet translate(const Profile& from, CandSet s, const Profile& to) {
    CandSet out = 0;
    for (int c : members(s)) {
        int j = to.index_of(from.name(c));
        if (j >= 0) out |= bit(j);
    }
    return out;
}

namespace detail {
inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}
inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}
}  // namespace detail

inline Profile parse_profile(std::string_view text) {
    std::vector<std::string> names;
    bool have_names = false;
    std::vector<std::vector<std::string>> rankings;
    std::vector<long> counts;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) fail("expected '<multiplicity>: ranking' or 'candidates: ...'");
        std::string head = detail::trim(std::string_view(line).substr(0, colon));
        std::string body = detail::trim(std::string_view(line).substr(colon + 1));
        if (head == "candidates") {
            if (have_names) fail("repeated candidates header");
            if (!rankings.empty()) fail("candidates header must precede rankings");
            names = detail::split(body, ',');
            for (const auto& nm : names)
                if (!Profile::valid_name(nm)) fail("bad candidate name '" + nm + "'");
            for (std::size_t i = 0; i < names.size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if (names[i] == names[j]) fail("duplicate candidate '" + names[i] + "' in header");
            have_names = true;
            continue;
        }
        long mult = 0;
        try {
            std::size_t used = 0;
            mult = std::stol(head, &used);
            if (used != head.size()) fail("bad multiplicity '" + head + "'");
        } catch (const std::logic_error&) {
            fail("bad multiplicity '" + head + "'");
        }
        if (mult <= 0) fail("multiplicity must be positive");
        auto toks = detail::split(body, '>');
        for (const auto& t : toks)
            if (!Profile::valid_name(t)) fail("bad candidate token '" + t + "'");
        for (std::size_t i = 0; i < toks.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (toks[i] == toks[j]) fail("duplicate candidate '" + toks[i] + "' in ranking");
        if (!have_names && rankings.empty()) {
            names = toks;
            have_names = true;
        }
        for (const auto& t : toks)
            if (std::find(names.begin(), names.end(), t) == names.end()) fail("unknown candidate '" + t + "'");
        if (toks.size() != names.size()) fail("ranking is missing candidates");
        rankings.push_back(std::move(toks));
        counts.push_back(mult);
    }
    if (rankings.empty()) throw ParseError("profile has no voters");
    if (static_cast<int>(names.size()) > kMaxCandidates) throw ParseError("too many candidates");
    std::vector<Group> groups;
    for (std::size_t k = 0; k < rankings.size(); ++k) {
        Ranking r;
        for (const auto& t : rankings[k])
            r.push_back(static_cast<int>(std::find(names.begin(), names.end(), t) - names.begin()));
        groups.push_back({std::move(r), counts[k]});
    }
    return Profile(std::move(names), std::move(groups));
}

inline Profile load_profile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_profile(ss.str());
}

inline std::string join_ranking(const std::vector<std::string>& r, std::string_view sep = ">") {
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += sep;
        out += r[i];
    }
    return out;
}

inline std::string serialize(const Profile& p) {
    std::string out = "candidates: " + join_ranking(p.names(), ",") + "\n";
    for (const auto& g : p.groups()) out += std::to_string(g.count) + ": " + join_ranking(p.ranking_names(g.order)) + "\n";
    return out;
}

inline Profile remove_candidates(const Profile& p, CandSet gone) {
    if (gone & ~p.all()) throw ProfileError("unknown candidate in removal set");
    if ((gone & p.all()) == p.all()) throw ProfileError("cannot remove every candidate");
    if (gone == 0) return p;
    std::vector<int> remap(p.m(), -1);
    std::vector<std::string> names;
    for (int c = 0; c < p.m(); ++c)
        if (!has(gone, c)) {
            remap[c] = static_cast<int>(names.size());
            names.push_back(p.name(c));
        }
    std::vector<Group> groups;
    for (const auto& g : p.groups()) {
        Ranking r;
        for (int c : g.order)
            if (remap[c] >= 0) r.push_back(remap[c]);
        groups.push_back({std::move(r), g.count});
    }
    return Profile(std::move(names), std::move(groups));
}

inline Profile restrict_to(const Profile& p, CandSet keep) {
    if (keep == 0) throw ProfileError("restriction to the empty set");
    if (keep & ~p.all()) throw ProfileError("unknown candidate in restriction");
    return remove_candidates(p, p.all() & ~keep);
}

class MajorityMatrix {
public:
    explicit MajorityMatrix(int m) : m_(m), v_(static_cast<std::size_t>(m) * m, 0) {}
    long operator()(int a, int b) const { return v_[static_cast<std::size_t>(a) * m_ + b]; }
    long& at(int a, int b) { return v_[static_cast<std::size_t>(a) * m_ + b]; }
    int m() const { return m_; }

private:
    int m_;
    std::vector<long> v_;
};

inline MajorityMatrix majority_matrix(const Profile& p) {
    const int m = p.m();
    MajorityMatrix M(m);
    std::vector<int> pos(m);
    for (const auto& g : p.groups()) {
        for (int k = 0; k < m; ++k) pos[g.order[k]] = k;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (a != b) M.at(a, b) += pos[a] < pos[b] ? g.count : -g.count;
    }
    return M;
}

inline Profile reverse_profile(const Profile& p) {
    std::vector<Group> groups = p.groups();
    for (auto& g : groups) std::reverse(g.order.begin(), g.order.end());
    return Profile(p.names(), std::move(groups));
}

inline Profile add_voter(const Profile& p, const Ranking& r) {
    std::vector<Group> groups = p.groups();
    groups.push_back({r, 1});
    try {
        return Profile(p.names(), std::move(groups));
    } catch (const ProfileError&) {
        throw ProfileError("added ranking does not match the candidate set");
    }
}

// Voter i (1-based) now submits r; its group is split so every other voter keeps its index.
inline Profile replace_voter(const Profile& p, long i, const Ranking& r) {
    if (i < 1 || i > p.n()) throw ProfileError("voter index out of range");
    std::vector<Group> groups;
    for (const auto& g : p.groups()) {
        if (i >= 1 && i <= g.count) {
            if (i > 1) groups.push_back({g.order, i - 1});
            groups.push_back({r, 1});
            if (g.count - i > 0) groups.push_back({g.order, g.count - i});
        } else {
            groups.push_back(g);
        }
        i -= g.count;
    }
    return Profile(p.names(), std::move(groups));
}

inline std::vector<long> first_place_counts(const Profile& p) {
    std::vector<long> cnt(p.m(), 0);
    for (const auto& g : p.groups()) cnt[g.order.front()] += g.count;
    return cnt;
}

}  // namespace clonelab
