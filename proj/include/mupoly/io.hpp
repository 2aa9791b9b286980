#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "mupoly/error.hpp"
#include "mupoly/poly.hpp"

namespace mupoly::io {

/// 17 significant digits, shortest %g form; non-finite values as inf/-inf/nan.
[[nodiscard]] inline std::string format_real(double x) { return fmt::format("{:.17g}", x); }

[[nodiscard]] inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[nodiscard]] inline double parse_real(std::string_view text) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (t.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw Error(ErrorKind::InvalidInput, "malformed number '" + std::string(text) + "'");
    return value;
}

[[nodiscard]] inline std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(',', start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

[[nodiscard]] inline std::vector<double> parse_real_list(std::string_view text) {
    std::vector<double> out;
    for (auto part : split_commas(text)) out.push_back(parse_real(part));
    return out;
}

/// Parses `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i` (the imaginary unit may also be written j).
[[nodiscard]] inline Complex parse_complex(std::string_view text) {
    const std::string_view t = trim(text);
    if (t.empty()) throw Error(ErrorKind::InvalidInput, "empty complex number");
    const char tail = t.back();
    if (tail != 'i' && tail != 'j') return Complex{parse_real(t), 0.0};

    const std::string_view body = t.substr(0, t.size() - 1);
    // split at the last sign that is not leading and not an exponent sign
    std::size_t cut = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    auto imag_of = [&](std::string_view s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        return parse_real(s);
    };
    try {
        if (cut == std::string_view::npos) return Complex{0.0, imag_of(body)};
        return Complex{parse_real(body.substr(0, cut)), imag_of(body.substr(cut))};
    } catch (const Error&) {
        throw Error(ErrorKind::InvalidInput, "malformed complex number '" + std::string(text) + "'");
    }
}

[[nodiscard]] inline std::vector<Complex> parse_complex_list(std::string_view text) {
    std::vector<Complex> out;
    for (auto part : split_commas(text)) out.push_back(parse_complex(part));
    return out;
}

/// `lo:step:hi`, inclusive of hi up to a half-step tolerance.
[[nodiscard]] inline std::vector<double> parse_grid(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = text.find(':', start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (parts.size() == 1) return {parse_real(parts[0])};
    if (parts.size() != 3) throw Error(ErrorKind::InvalidInput, "shift grid must be lo:step:hi");
    const double lo = parse_real(parts[0]);
    const double step = parse_real(parts[1]);
    const double hi = parse_real(parts[2]);
    if (!(step > 0.0) || hi < lo) throw Error(ErrorKind::InvalidInput, "shift grid needs step > 0 and hi >= lo");
    std::vector<double> grid;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 0.5));
    for (long i = 0; i <= count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
    return grid;
}

/**
 * Minimal streaming JSON emitter with insertion-ordered keys and fixed real
 * formatting, so reports are byte-for-byte reproducible. Non-finite reals are
 * written as null. Arrays of reals are written on one line.
 */
class JsonWriter {
public:
    JsonWriter& begin_object() { return open('{', false); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('[', false); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(std::string_view k) {
        prefix();
        write_string(k);
        out_ += ": ";
        after_key_ = true;
        return *this;
    }

    JsonWriter& value(double x) { return raw(std::isfinite(x) ? format_real(x) : std::string("null")); }
    JsonWriter& value(long long x) { return raw(std::to_string(x)); }
    JsonWriter& value(long x) { return raw(std::to_string(x)); }
    JsonWriter& value(int x) { return raw(std::to_string(x)); }
    JsonWriter& value(std::size_t x) { return raw(std::to_string(x)); }
    JsonWriter& value(bool b) { return raw(b ? "true" : "false"); }
    JsonWriter& value(std::string_view s) {
        prefix();
        write_string(s);
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& null() { return raw("null"); }

    template <typename Range>
    JsonWriter& real_array(const Range& xs) {
        open('[', true);
        for (double x : xs) value(x);
        return close(']');
    }

    [[nodiscard]] std::string str() const { return out_ + "\n"; }

private:
    struct Frame {
        bool inline_items = false;
        bool empty = true;
    };

    JsonWriter& raw(std::string_view text) {
        prefix();
        out_ += text;
        return *this;
    }

    void prefix() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (stack_.empty()) return;
        Frame& f = stack_.back();
        if (!f.empty) out_ += f.inline_items ? ", " : ",";
        f.empty = false;
        if (!f.inline_items) newline_indent(stack_.size());
    }

    JsonWriter& open(char c, bool inline_items) {
        prefix();
        out_ += c;
        stack_.push_back({inline_items, true});
        return *this;
    }

    JsonWriter& close(char c) {
        const Frame f = stack_.back();
        stack_.pop_back();
        if (!f.empty && !f.inline_items) newline_indent(stack_.size());
        out_ += c;
        return *this;
    }

    void newline_indent(std::size_t depth) {
        out_ += '\n';
        out_.append(depth * 2, ' ');
    }

    void write_string(std::string_view s) {
        out_ += '"';
        for (char ch : s) {
            switch (ch) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(ch) < 0x20)
                        out_ += fmt::format("\\u{:04x}", static_cast<int>(static_cast<unsigned char>(ch)));
                    else
                        out_ += ch;
            }
        }
        out_ += '"';
    }

    std::string out_;
    std::vector<Frame> stack_;
    bool after_key_ = false;
};

}  // namespace mupoly::io
