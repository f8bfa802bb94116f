#pragma once

#include <ppd/error.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ppd {

/// Canonical state id of a character, always in 1..state_count.
using State = std::uint8_t;

inline constexpr std::size_t kMaxStates = 3;

/// Spreadsheet-style names: a..z, aa..az, ba.. .
inline std::string default_char_label(std::size_t index) {
    std::string label;
    std::size_t i = index + 1;
    while (i > 0) {
        --i;
        label.insert(label.begin(), static_cast<char>('a' + i % 26));
        i /= 26;
    }
    return label;
}

inline std::string default_taxon_label(std::size_t index) {
    return "t" + std::to_string(index + 1);
}

/// An immutable n x m matrix of three-state characters.
///
/// Input labels can be any non-negative integers. Within each column they
/// are renumbered 1..s in ascending order of value, so a column already
/// drawn from {1,2,3} keeps its labels. The input label of every canonical
/// state is retained for output.
class CharacterMatrix {
  public:
    CharacterMatrix() = default;

    explicit CharacterMatrix(const std::vector<std::vector<int>>& rows,
                             std::vector<std::string> taxa_labels = {},
                             std::vector<std::string> char_labels = {})
        : taxa_labels_(std::move(taxa_labels)), char_labels_(std::move(char_labels)) {
        if (rows.empty()) {
            throw Error(ErrorKind::MalformedInput, "matrix has no rows");
        }
        n_ = rows.size();
        m_ = rows.front().size();
        if (m_ == 0) {
            throw Error(ErrorKind::MalformedInput, "matrix has no columns");
        }
        for (std::size_t t = 0; t < n_; ++t) {
            if (rows[t].size() != m_) {
                throw Error(ErrorKind::MalformedInput,
                            "row " + std::to_string(t + 1) + " has " + std::to_string(rows[t].size()) +
                                " cells, expected " + std::to_string(m_));
            }
        }

        if (taxa_labels_.empty()) {
            for (std::size_t t = 0; t < n_; ++t) taxa_labels_.push_back(default_taxon_label(t));
        }
        if (char_labels_.empty()) {
            for (std::size_t c = 0; c < m_; ++c) char_labels_.push_back(default_char_label(c));
        }
        if (taxa_labels_.size() != n_) {
            throw Error(ErrorKind::MalformedInput, "taxon label count does not match row count");
        }
        if (char_labels_.size() != m_) {
            throw Error(ErrorKind::MalformedInput, "character label count does not match column count");
        }
        check_unique(taxa_labels_, "taxon");
        check_unique(char_labels_, "character");

        cells_.resize(n_ * m_);
        original_.resize(m_);
        for (std::size_t c = 0; c < m_; ++c) {
            std::vector<int> values;
            for (std::size_t t = 0; t < n_; ++t) {
                if (rows[t][c] < 0) {
                    throw Error(ErrorKind::MalformedInput, "negative state in column " + char_labels_[c]);
                }
                values.push_back(rows[t][c]);
            }
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            if (values.size() > kMaxStates) {
                throw Error(ErrorKind::TooManyStates, "column " + char_labels_[c] + " has " +
                                                          std::to_string(values.size()) + " distinct states");
            }
            original_[c] = values;
            for (std::size_t t = 0; t < n_; ++t) {
                auto it = std::lower_bound(values.begin(), values.end(), rows[t][c]);
                cells_[c * n_ + t] = static_cast<State>(1 + (it - values.begin()));
            }
        }
    }

    std::size_t taxa() const noexcept { return n_; }
    std::size_t chars() const noexcept { return m_; }

    State at(std::size_t taxon, std::size_t ch) const { return cells_[ch * n_ + taxon]; }

    /// Column-major storage: a character's states over all taxa are contiguous.
    std::span<const State> column(std::size_t ch) const {
        return {cells_.data() + ch * n_, n_};
    }

    std::vector<State> row(std::size_t taxon) const {
        std::vector<State> r(m_);
        for (std::size_t c = 0; c < m_; ++c) r[c] = at(taxon, c);
        return r;
    }

    std::size_t state_count(std::size_t ch) const { return original_[ch].size(); }

    std::vector<State> states(std::size_t ch) const {
        std::vector<State> s;
        for (std::size_t i = 1; i <= state_count(ch); ++i) s.push_back(static_cast<State>(i));
        return s;
    }

    /// Single-state characters are compatible with everything.
    bool is_trivial(std::size_t ch) const { return state_count(ch) < 2; }

    int original_state(std::size_t ch, State s) const { return original_[ch][s - 1]; }

    const std::string& taxon_label(std::size_t t) const { return taxa_labels_[t]; }
    const std::string& char_label(std::size_t c) const { return char_labels_[c]; }
    const std::vector<std::string>& taxa_labels() const noexcept { return taxa_labels_; }
    const std::vector<std::string>& char_labels() const noexcept { return char_labels_; }

    /// Rows as input labels; feeding these back to the constructor reproduces the matrix.
    std::vector<std::vector<int>> original_rows() const {
        std::vector<std::vector<int>> rows(n_, std::vector<int>(m_));
        for (std::size_t t = 0; t < n_; ++t)
            for (std::size_t c = 0; c < m_; ++c) rows[t][c] = original_state(c, at(t, c));
        return rows;
    }

    friend bool operator==(const CharacterMatrix&, const CharacterMatrix&) = default;

  private:
    static void check_unique(const std::vector<std::string>& labels, const char* what) {
        std::unordered_set<std::string> seen;
        for (const auto& l : labels) {
            if (!seen.insert(l).second) {
                throw Error(ErrorKind::DuplicateLabel, std::string("duplicate ") + what + " label '" + l + "'");
            }
        }
    }

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::string> taxa_labels_;
    std::vector<std::string> char_labels_;
    std::vector<State> cells_;
    std::vector<std::vector<int>> original_;
};

/// A view of selected columns of a matrix. The matrix must outlive the slice.
class ColumnSlice {
  public:
    ColumnSlice(const CharacterMatrix& source, std::vector<std::size_t> columns)
        : source_(&source), columns_(std::move(columns)) {
        std::vector<bool> used(source.chars(), false);
        for (auto c : columns_) {
            if (c >= source.chars()) {
                throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(c) + " out of range");
            }
            if (used[c]) {
                throw Error(ErrorKind::DuplicateColumn, "column " + source.char_label(c) + " repeated");
            }
            used[c] = true;
        }
    }

    const CharacterMatrix& source() const noexcept { return *source_; }
    const std::vector<std::size_t>& columns() const noexcept { return columns_; }

    std::size_t taxa() const noexcept { return source_->taxa(); }
    std::size_t width() const noexcept { return columns_.size(); }

    /// Source column index of slice position j.
    std::size_t column_index(std::size_t j) const { return columns_[j]; }
    State at(std::size_t taxon, std::size_t j) const { return source_->at(taxon, columns_[j]); }
    std::span<const State> column(std::size_t j) const { return source_->column(columns_[j]); }

    /// Copies the selected columns into a standalone matrix (labels preserved).
    CharacterMatrix materialize() const {
        std::vector<std::vector<int>> rows(taxa(), std::vector<int>(width()));
        std::vector<std::string> labels;
        for (std::size_t j = 0; j < width(); ++j) {
            labels.push_back(source_->char_label(columns_[j]));
            for (std::size_t t = 0; t < taxa(); ++t) {
                rows[t][j] = source_->original_state(columns_[j], at(t, j));
            }
        }
        return CharacterMatrix(rows, source_->taxa_labels(), std::move(labels));
    }

  private:
    const CharacterMatrix* source_;
    std::vector<std::size_t> columns_;
};

inline ColumnSlice restrict(const CharacterMatrix& m, std::vector<std::size_t> columns) {
    return ColumnSlice(m, std::move(columns));
}

/// Restricting a slice composes: positions are indices into the slice.
inline ColumnSlice restrict(const ColumnSlice& s, const std::vector<std::size_t>& positions) {
    std::vector<std::size_t> cols;
    for (auto p : positions) {
        if (p >= s.width()) {
            throw Error(ErrorKind::IndexOutOfRange, "slice position " + std::to_string(p) + " out of range");
        }
        cols.push_back(s.column_index(p));
    }
    return ColumnSlice(s.source(), std::move(cols));
}

inline ColumnSlice full_slice(const CharacterMatrix& m) {
    std::vector<std::size_t> cols(m.chars());
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = c;
    return ColumnSlice(m, std::move(cols));
}

struct DedupedMatrix {
    CharacterMatrix matrix;
    /// representative[t] is the row of `matrix` standing for original taxon t.
    std::vector<std::size_t> representative;
};

/// Keeps the first occurrence of every distinct row, in original order.
inline DedupedMatrix dedupe_rows(const CharacterMatrix& m) {
    std::map<std::vector<State>, std::size_t> seen;
    std::vector<std::vector<int>> rows;
    std::vector<std::string> labels;
    std::vector<std::size_t> rep(m.taxa());
    auto original = m.original_rows();
    for (std::size_t t = 0; t < m.taxa(); ++t) {
        auto [it, inserted] = seen.emplace(m.row(t), rows.size());
        if (inserted) {
            rows.push_back(original[t]);
            labels.push_back(m.taxon_label(t));
        }
        rep[t] = it->second;
    }
    return {CharacterMatrix(rows, std::move(labels), m.char_labels()), std::move(rep)};
}

enum class InputFormat { Csv, Compact };

namespace detail {

inline std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        cells.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

inline bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

inline CharacterMatrix parse_csv(std::istream& in) {
    std::string line;
    std::vector<std::vector<int>> rows;
    std::vector<std::string> taxa;
    std::vector<std::string> chars;
    bool first = true;
    bool taxon_column = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty()) continue;
        auto cells = split(t, ',');
        if (first) {
            first = false;
            int dummy;
            bool header = std::any_of(cells.begin(), cells.end(),
                                      [&](std::string_view c) { return !parse_int(c, dummy); });
            if (header) {
                taxon_column = iequals(cells.front(), "taxon");
                for (std::size_t i = taxon_column ? 1 : 0; i < cells.size(); ++i) chars.emplace_back(cells[i]);
                continue;
            }
        }
        std::vector<int> row;
        std::size_t start = 0;
        if (taxon_column) {
            taxa.emplace_back(cells.front());
            start = 1;
        }
        for (std::size_t i = start; i < cells.size(); ++i) {
            int v;
            if (!parse_int(cells[i], v)) {
                throw Error(ErrorKind::MalformedInput,
                            "line " + std::to_string(line_no) + ": non-integer cell '" + std::string(cells[i]) + "'");
            }
            row.push_back(v);
        }
        std::size_t expected = !chars.empty() ? chars.size() : (rows.empty() ? row.size() : rows.front().size());
        if (row.size() != expected) {
            throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": expected " +
                                                       std::to_string(expected) + " states, got " +
                                                       std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    return CharacterMatrix(rows, std::move(taxa), std::move(chars));
}

inline CharacterMatrix parse_compact(std::istream& in) {
    std::string line;
    std::vector<std::vector<int>> rows;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty()) continue;
        std::vector<int> row;
        for (char ch : t) {
            if (ch < '0' || ch > '9') {
                throw Error(ErrorKind::MalformedInput,
                            "line " + std::to_string(line_no) + ": non-digit '" + std::string(1, ch) + "'");
            }
            row.push_back(ch - '0');
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": ragged row");
        }
        rows.push_back(std::move(row));
    }
    return CharacterMatrix(rows);
}

} // namespace detail

inline CharacterMatrix parse_matrix(std::istream& in, InputFormat format) {
    return format == InputFormat::Csv ? detail::parse_csv(in) : detail::parse_compact(in);
}

inline CharacterMatrix parse_matrix(std::string_view text, InputFormat format) {
    std::istringstream in{std::string(text)};
    return parse_matrix(in, format);
}

/// CSV with a `taxon` header column; round-trips through parse_matrix.
inline void write_csv(std::ostream& out, const CharacterMatrix& m) {
    out << "taxon";
    for (const auto& l : m.char_labels()) out << ',' << l;
    out << '\n';
    for (std::size_t t = 0; t < m.taxa(); ++t) {
        out << m.taxon_label(t);
        for (std::size_t c = 0; c < m.chars(); ++c) out << ',' << m.original_state(c, m.at(t, c));
        out << '\n';
    }
}

/// Compact rows; only meaningful when every label is a single digit.
inline void write_compact(std::ostream& out, const CharacterMatrix& m) {
    for (std::size_t t = 0; t < m.taxa(); ++t) {
        for (std::size_t c = 0; c < m.chars(); ++c) out << m.original_state(c, m.at(t, c));
        out << '\n';
    }
}

} // namespace ppd
