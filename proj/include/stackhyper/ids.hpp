// ============================================================================
// stackhyper/ids.hpp — interned identifier tables
// ============================================================================
//
// Control states, stack symbols and propositions are referred to by dense
// u32 indices everywhere; NameTable maps between indices and source-level
// names.  Index order is insertion order, which the parsers keep equal to
// declaration order so that dumps and witnesses are deterministic.
//
// ============================================================================

#ifndef STACKHYPER_IDS_HPP
#define STACKHYPER_IDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace stackhyper {

using Id = std::uint32_t;
inline constexpr Id kNoId = static_cast<Id>(-1);

// Stack-symbol slot meaning "no symbol" (internal steps, component 0).
inline constexpr Id kEpsilon = static_cast<Id>(-2);

class NameTable {
public:
    Id intern(const std::string& name) {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        Id id = static_cast<Id>(names_.size());
        names_.push_back(name);
        index_.emplace(name, id);
        return id;
    }

    std::optional<Id> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& name(Id id) const { return names_.at(id); }
    std::size_t size() const noexcept { return names_.size(); }
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    bool operator==(const NameTable& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, Id> index_;
};

}  // namespace stackhyper

#endif  // STACKHYPER_IDS_HPP
