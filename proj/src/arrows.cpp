#include "hyperdual/arrows.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include "hyperdual/errors.hpp"

namespace hyperdual {

bool occurrence_less(const Occurrence& a, const Occurrence& b) {
    return std::tie(a.edge, a.index, a.reversed) < std::tie(b.edge, b.index, b.reversed);
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct LineScanner {
    std::string_view text;
    int line;
    std::size_t pos = 0;

    int column() const { return static_cast<int>(pos) + 1; }
    bool at_end() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void skip_spaces() {
        while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line, column());
    }

    std::string ident() {
        if (at_end() || !is_ident_start(peek()))
            fail("expected identifier");
        std::size_t start = pos;
        while (!at_end() && is_ident_char(peek())) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    int positive_int() {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected arrow index");
        long v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1'000'000) fail("arrow index out of range");
            ++pos;
        }
        if (v < 1) fail("arrow index must be positive");
        return static_cast<int>(v);
    }

    bool sign() {
        if (at_end()) fail("expected sign '+' or '-'");
        char c = peek();
        if (c == '+') { ++pos; return false; }
        if (c == '-') { ++pos; return true; }
        // Catch the usual Unicode impostors with a pointed message.
        if (static_cast<unsigned char>(c) == 0xE2 && pos + 2 < text.size()) {
            unsigned char b1 = text[pos + 1], b2 = text[pos + 2];
            if (b1 == 0x88 && b2 == 0x92)
                fail("Unicode minus sign U+2212 is not a sign token; use ASCII '-'");
            if (b1 == 0x80 && (b2 == 0x93 || b2 == 0x94))
                fail("Unicode dash is not a sign token; use ASCII '-'");
        }
        fail(std::string("unknown sign token '") + c + "'; expected '+' or '-'");
    }
};

struct SeenAt {
    int line;
    int column;
};

} // namespace

ArrowPresentation parse_hmap(std::string_view text) {
    ArrowPresentation ap;
    bool have_name = false;
    std::map<std::pair<std::string, int>, SeenAt> seen;

    int line_no = 0;
    std::size_t cursor = 0;
    while (cursor <= text.size()) {
        std::size_t eol = text.find('\n', cursor);
        std::string_view raw = text.substr(
            cursor, eol == std::string_view::npos ? std::string_view::npos : eol - cursor);
        ++line_no;

        // Strip comment, then trailing CR/space.
        std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);

        LineScanner sc{raw, line_no};
        sc.skip_spaces();
        if (!sc.at_end()) {
            int kw_col = sc.column();
            std::string kw = sc.ident();
            if (!sc.at_end() && sc.peek() == ':') {
                ++sc.pos;
            } else {
                sc.fail("expected ':' after '" + kw + "'");
            }

            if (kw == "name") {
                if (have_name)
                    throw ParseError("duplicate name line", line_no, kw_col);
                sc.skip_spaces();
                ap.name = sc.ident();
                sc.skip_spaces();
                if (!sc.at_end()) sc.fail("trailing characters after name");
                have_name = true;
            } else if (kw == "vertex") {
                std::vector<Occurrence> curve;
                for (;;) {
                    sc.skip_spaces();
                    if (sc.at_end()) break;
                    int occ_col = sc.column();
                    Occurrence occ;
                    occ.edge = sc.ident();
                    if (sc.at_end() || sc.peek() != '.')
                        sc.fail("expected '.' after edge id");
                    ++sc.pos;
                    occ.index = sc.positive_int();
                    occ.reversed = sc.sign();
                    auto key = std::make_pair(occ.edge, occ.index);
                    auto [it, fresh] = seen.emplace(key, SeenAt{line_no, occ_col});
                    if (!fresh)
                        throw ParseError("duplicate arrow " + occ.edge + "." +
                                             std::to_string(occ.index) +
                                             " (first at line " + std::to_string(it->second.line) + ")",
                                         line_no, occ_col);
                    curve.push_back(std::move(occ));
                }
                ap.curves.push_back(std::move(curve));
            } else {
                throw ParseError("unknown directive '" + kw + "'", line_no, kw_col);
            }
        }

        if (eol == std::string_view::npos) break;
        cursor = eol + 1;
    }

    validate(ap);
    return ap;
}

void validate(const ArrowPresentation& ap) {
    std::map<std::string, std::vector<int>> indices;
    for (const auto& curve : ap.curves) {
        for (const auto& occ : curve) {
            if (occ.index < 1)
                throw ParseError("arrow index must be positive: " + occ.edge);
            indices[occ.edge].push_back(occ.index);
        }
    }
    for (auto& [edge, idx] : indices) {
        std::sort(idx.begin(), idx.end());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i > 0 && idx[i] == idx[i - 1])
                throw ParseError("duplicate arrow " + edge + "." + std::to_string(idx[i]));
            if (idx[i] != static_cast<int>(i) + 1)
                throw ParseError("index gap: edge " + edge + " is missing index " +
                                 std::to_string(i + 1));
        }
    }
}

ArrowPresentation canonical_order(const ArrowPresentation& ap) {
    ArrowPresentation out;
    out.name = ap.name;

    std::vector<std::vector<Occurrence>> rotated;
    for (const auto& curve : ap.curves) {
        if (curve.empty()) continue;
        auto least = std::min_element(curve.begin(), curve.end(), occurrence_less);
        std::vector<Occurrence> rot(least, curve.end());
        rot.insert(rot.end(), curve.begin(), least);
        rotated.push_back(std::move(rot));
    }

    auto curve_less = [](const std::vector<Occurrence>& a, const std::vector<Occurrence>& b) {
        // The rotation start is the least occurrence, so comparing the rotated
        // sequences also compares the smallest contained edge labels first.
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            occurrence_less);
    };
    std::sort(rotated.begin(), rotated.end(), curve_less);
    out.curves = std::move(rotated);

    std::size_t empties =
        static_cast<std::size_t>(std::count_if(ap.curves.begin(), ap.curves.end(),
                                               [](const auto& c) { return c.empty(); }));
    out.curves.resize(out.curves.size() + empties);
    return out;
}

std::string to_hmap_text(const ArrowPresentation& ap) {
    ArrowPresentation c = canonical_order(ap);
    std::ostringstream os;
    if (!c.name.empty()) os << "name: " << c.name << "\n";
    for (const auto& curve : c.curves) {
        os << "vertex:";
        for (const auto& occ : curve)
            os << " " << occ.edge << "." << occ.index << (occ.reversed ? '-' : '+');
        os << "\n";
    }
    return os.str();
}

int total_degree(const ArrowPresentation& ap) {
    int d = 0;
    for (const auto& curve : ap.curves) d += static_cast<int>(curve.size());
    return d;
}

} // namespace hyperdual
