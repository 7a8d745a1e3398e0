#include <array>
#include <map>
#include <memory>
#include <mutex>

#include "fmf/reader.hpp"
#include "text_util.hpp"

namespace fmf {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// Length of the well-formed UTF-8 sequence at s[i], or 0.
std::size_t utf8_sequence(std::string_view s, std::size_t i, char32_t* cp = nullptr) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        if (cp) *cp = b0;
        return 1;
    }
    std::size_t len = 0;
    char32_t v = 0;
    unsigned char lo = 0x80, hi = 0xBF;
    if (b0 >= 0xC2 && b0 <= 0xDF) len = 2, v = b0 & 0x1F;
    else if (b0 >= 0xE0 && b0 <= 0xEF) {
        len = 3, v = b0 & 0x0F;
        if (b0 == 0xE0) lo = 0xA0;
        if (b0 == 0xED) hi = 0x9F;
    } else if (b0 >= 0xF0 && b0 <= 0xF4) {
        len = 4, v = b0 & 0x07;
        if (b0 == 0xF0) lo = 0x90;
        if (b0 == 0xF4) hi = 0x8F;
    } else {
        return 0;
    }
    if (i + len > s.size()) return 0;
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if (b < (k == 1 ? lo : 0x80) || b > (k == 1 ? hi : 0xBF)) return 0;
        v = (v << 6) | (b & 0x3F);
    }
    if (cp) *cp = v;
    return len;
}

std::vector<std::size_t> decode_utf8(std::string_view bytes, std::string& out) {
    std::vector<std::size_t> bad;
    out.reserve(out.size() + bytes.size());
    for (std::size_t i = 0; i < bytes.size();) {
        const std::size_t len = utf8_sequence(bytes, i);
        if (len == 0) {
            bad.push_back(i);
            append_utf8(out, kReplacement);
            ++i;
        } else {
            out.append(bytes.substr(i, len));
            i += len;
        }
    }
    return bad;
}

// Calls f(code point) for each character of valid UTF-8 (invalid bytes
// yield U+FFFD).
template <class F>
void for_each_code_point(std::string_view utf8, F f) {
    for (std::size_t i = 0; i < utf8.size();) {
        char32_t cp = 0;
        const std::size_t len = utf8_sequence(utf8, i, &cp);
        if (len == 0) {
            f(kReplacement);
            ++i;
        } else {
            f(cp);
            i += len;
        }
    }
}

// Windows-1252 0x80..0x9F; 0 marks an undefined byte.
constexpr std::array<char32_t, 32> kCp1252High = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
    0x2039, 0x0152, 0,      0x017D, 0,      0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
    0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178};

Coding single_byte_coding(std::string name, std::function<char32_t(unsigned char)> to_cp) {
    Coding c;
    c.name = name;
    std::map<char32_t, unsigned char> reverse;
    for (int b = 0; b < 256; ++b) {
        const char32_t cp = to_cp(static_cast<unsigned char>(b));
        if (cp) reverse.emplace(cp, static_cast<unsigned char>(b));
    }
    c.decode = [to_cp](std::string_view bytes, std::string& out) {
        std::vector<std::size_t> bad;
        for (std::size_t i = 0; i < bytes.size(); ++i) {
            const auto b = static_cast<unsigned char>(bytes[i]);
            const char32_t cp = b == 0 ? 0 : to_cp(b);
            if (b != 0 && cp == 0) {
                bad.push_back(i);
                append_utf8(out, kReplacement);
            } else {
                append_utf8(out, cp);
            }
        }
        return bad;
    };
    c.encode = [reverse = std::move(reverse)](std::string_view utf8) {
        std::string out;
        for_each_code_point(utf8, [&](char32_t cp) {
            if (cp == 0) {
                out += '\0';
                return;
            }
            auto it = reverse.find(cp);
            out += it == reverse.end() ? '?' : static_cast<char>(it->second);
        });
        return out;
    };
    return c;
}

struct CodingTable {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const Coding>> by_name;  // lower-case names and aliases
    std::vector<std::shared_ptr<const Coding>> all;                 // keeps replaced codings alive

    CodingTable() {
        Coding utf8;
        utf8.name = "utf-8";
        utf8.decode = decode_utf8;
        utf8.encode = [](std::string_view s) { return std::string(s); };
        add(std::move(utf8), {"utf8"});
        add(single_byte_coding("cp1252",
                               [](unsigned char b) -> char32_t {
                                   return b >= 0x80 && b <= 0x9F ? kCp1252High[b - 0x80] : char32_t(b);
                               }),
            {"windows-1252"});
        add(single_byte_coding("latin-1", [](unsigned char b) -> char32_t { return b; }),
            {"latin1", "iso-8859-1", "iso8859-1"});
        add(single_byte_coding("ascii", [](unsigned char b) -> char32_t { return b < 0x80 ? char32_t(b) : 0; }),
            {"us-ascii"});
    }

    void add(Coding coding, const std::vector<std::string>& aliases) {
        auto shared = std::make_shared<const Coding>(std::move(coding));
        all.push_back(shared);
        std::string key;
        for (char ch : shared->name) key += detail::ascii_lower(ch);
        by_name[key] = shared;
        for (const auto& alias : aliases) {
            std::string a;
            for (char ch : alias) a += detail::ascii_lower(ch);
            by_name[a] = shared;
        }
    }
};

CodingTable& table() {
    static CodingTable t;
    return t;
}

}  // namespace

const Coding* find_coding(std::string_view name) {
    std::string key;
    for (char ch : detail::trim(name)) key += detail::ascii_lower(ch);
    CodingTable& t = table();
    std::lock_guard lock(t.mutex);
    auto it = t.by_name.find(key);
    return it == t.by_name.end() ? nullptr : it->second.get();
}

void register_coding(Coding coding, std::vector<std::string> aliases) {
    CodingTable& t = table();
    std::lock_guard lock(t.mutex);
    t.add(std::move(coding), aliases);
}

}  // namespace fmf
