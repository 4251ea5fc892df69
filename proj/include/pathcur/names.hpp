#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pathcur {

// State prefixes stripped from species names before comparison. The shipped
// data/state_prefixes.tsv carries the same list together with SBO terms.
inline const std::vector<std::string>& default_state_prefixes() {
    static const std::vector<std::string> prefixes{
        "phosphorylated", "dephosphorylated", "ubiquitinated", "acetylated",
        "methylated",     "activated",        "inactivated"};
    return prefixes;
}

// Lowercase (ASCII) and collapse runs of whitespace to single spaces, trimmed.
inline std::string casefold_collapse(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    for (char ch : name) {
        auto c = static_cast<unsigned char>(ch);
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
    }
    return out;
}

// Casefold, collapse whitespace, then strip known state prefixes from the
// front until none applies. The last word is never stripped, so
// "phosphorylated" alone stays "phosphorylated".
inline std::string normalize_name(std::string_view name, const std::vector<std::string>& prefixes) {
    std::string s = casefold_collapse(name);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& raw : prefixes) {
            std::string p = casefold_collapse(raw);
            if (p.empty()) continue;
            if (s.size() > p.size() + 1 && s.compare(0, p.size(), p) == 0 && s[p.size()] == ' ') {
                s.erase(0, p.size() + 1);
                changed = true;
            }
        }
    }
    return s;
}

inline std::string normalize_name(std::string_view name) {
    return normalize_name(name, default_state_prefixes());
}

// Decode UTF-8 into code points. Invalid bytes decode as themselves so that
// distinct byte strings never collapse onto the same code point sequence.
inline std::u32string utf8_code_points(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            out.push_back(c);
            ++i;
            continue;
        }
        int extra = (c >> 5) == 0x6 ? 1 : (c >> 4) == 0xE ? 2 : (c >> 3) == 0x1E ? 3 : -1;
        if (extra < 0 || i + static_cast<std::size_t>(extra) >= s.size()) {
            out.push_back(0xDC00u + c);  // lone surrogate range marks a raw byte
            ++i;
            continue;
        }
        char32_t cp = extra == 1 ? (c & 0x1F) : extra == 2 ? (c & 0x0F) : (c & 0x07);
        bool ok = true;
        for (int k = 1; k <= extra; ++k) {
            auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (cc & 0x3F);
        }
        if (!ok) {
            out.push_back(0xDC00u + c);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += static_cast<std::size_t>(extra) + 1;
    }
    return out;
}

// Unit-cost edit distance, two rows of memory.
template <typename Seq>
std::size_t levenshtein_distance(const Seq& a, const Seq& b) {
    const Seq& longer = a.size() >= b.size() ? a : b;
    const Seq& shorter = a.size() >= b.size() ? b : a;
    std::vector<std::size_t> row(shorter.size() + 1);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= longer.size(); ++i) {
        std::size_t diagonal = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= shorter.size(); ++j) {
            std::size_t above = row[j];
            std::size_t subst = diagonal + (longer[i - 1] == shorter[j - 1] ? 0 : 1);
            row[j] = std::min({subst, above + 1, row[j - 1] + 1});
            diagonal = above;
        }
    }
    return row[shorter.size()];
}

// round(100 * (1 - dist / max_len)) in integer arithmetic, halves rounding up.
inline int similarity_from_distance(std::size_t dist, std::size_t max_len) {
    if (max_len == 0) return 100;
    return static_cast<int>((200 * (max_len - dist) + max_len) / (2 * max_len));
}

// Levenshtein-based similarity on a 0..100 scale over code points.
inline int levenshtein_similarity(std::string_view a, std::string_view b) {
    if (a == b) return 100;
    auto ca = utf8_code_points(a);
    auto cb = utf8_code_points(b);
    return similarity_from_distance(levenshtein_distance(ca, cb), std::max(ca.size(), cb.size()));
}

// Largest edit distance that still yields similarity >= threshold for strings
// whose longer side has max_len code points.
inline std::size_t max_distance_for(int threshold, std::size_t max_len) {
    std::size_t d = 0;
    while (d < max_len && similarity_from_distance(d + 1, max_len) >= threshold) ++d;
    return d;
}

}  // namespace pathcur
