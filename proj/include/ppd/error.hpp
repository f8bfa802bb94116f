#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppd {

enum class ErrorKind {
    MalformedInput,
    TooManyStates,
    DuplicateLabel,
    IndexOutOfRange,
    DuplicateColumn,
    WrongArity,
    SameSourceCharacter,
    NotLaminar,
    LabelMismatch,
    TooLarge,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::TooManyStates: return "TooManyStates";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DuplicateColumn: return "DuplicateColumn";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::SameSourceCharacter: return "SameSourceCharacter";
    case ErrorKind::NotLaminar: return "NotLaminar";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace ppd
