#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heats {

enum class Combustion : std::uint8_t { Condensing, Burner };
enum class BurnerType : std::uint8_t { Included, External, Unspecified };
enum class Fuel : std::uint8_t { Diesel, CLU3, NaturalGas, LPG, Wood, Sawdust };

/// Small bit set over an enum with fewer than 32 enumerators.
template <class E>
class EnumSet {
 public:
  constexpr EnumSet() = default;
  constexpr EnumSet(std::initializer_list<E> values) {
    for (E v : values) insert(v);
  }

  constexpr void insert(E v) noexcept { bits_ |= bit(v); }
  constexpr bool contains(E v) const noexcept { return (bits_ & bit(v)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::uint32_t bits() const noexcept { return bits_; }

  friend constexpr bool operator==(EnumSet, EnumSet) = default;

 private:
  static constexpr std::uint32_t bit(E v) noexcept {
    return std::uint32_t{1} << static_cast<unsigned>(v);
  }
  std::uint32_t bits_ = 0;
};

// Canonical file/API spellings, exactly the enumerator names.
std::string_view to_string(Combustion v) noexcept;
std::string_view to_string(BurnerType v) noexcept;
std::string_view to_string(Fuel v) noexcept;
std::optional<Combustion> parse_combustion(std::string_view s) noexcept;
std::optional<BurnerType> parse_burner_type(std::string_view s) noexcept;
std::optional<Fuel> parse_fuel(std::string_view s) noexcept;

inline constexpr Combustion kAllCombustion[] = {Combustion::Condensing, Combustion::Burner};
inline constexpr BurnerType kAllBurnerTypes[] = {BurnerType::Included, BurnerType::External,
                                                 BurnerType::Unspecified};
inline constexpr Fuel kAllFuels[] = {Fuel::Diesel, Fuel::CLU3, Fuel::NaturalGas,
                                     Fuel::LPG,    Fuel::Wood, Fuel::Sawdust};

struct Device {
  /// Stable opaque key derived from (producer, model); see device_id().
  std::string id;
  std::string producer;
  std::string model;
  double power_min_kw = 0.0;
  double power_max_kw = 0.0;
  EnumSet<Combustion> combustion;
  BurnerType burner_type = BurnerType::Unspecified;
  EnumSet<Fuel> fuels;
  std::optional<std::string> description;
  std::optional<std::string> image_ref;

  friend bool operator==(const Device&, const Device&) = default;
};

/// 16 hex digits of FNV-1a over producer, a NUL separator and model.
std::string device_id(std::string_view producer, std::string_view model);

/// Throws InvariantViolation naming the failing field. `where` prefixes the
/// message ("devices.json: record 2").
void validate_device(const Device& device, const std::string& where);

// Facet values offered to users. Wood and Sawdust exist on devices but are
// not selectable, so the fuel facet has no entry for them.
enum class CombustionFilter : std::uint8_t { Any, Condensing, Burner };
enum class BurnerFilter : std::uint8_t { Any, Included, External };
enum class FuelFilter : std::uint8_t { Any, Diesel, CLU3, NaturalGas, LPG };

std::string_view to_string(CombustionFilter v) noexcept;
std::string_view to_string(BurnerFilter v) noexcept;
std::string_view to_string(FuelFilter v) noexcept;

// Facet parsers accept the canonical names case-insensitively plus the
// Romanian UI labels ("indiferent", "condensatie", "arzator", "inclus",
// "exterior", "motorina", "gaz", "GPL", ...).
std::optional<CombustionFilter> parse_combustion_filter(std::string_view s);
std::optional<BurnerFilter> parse_burner_filter(std::string_view s);
std::optional<FuelFilter> parse_fuel_filter(std::string_view s);

struct FilterCriteria {
  CombustionFilter combustion = CombustionFilter::Any;
  BurnerFilter burner_type = BurnerFilter::Any;
  FuelFilter fuel = FuelFilter::Any;

  bool matches(const Device& device) const noexcept;

  friend bool operator==(const FilterCriteria&, const FilterCriteria&) = default;
};

inline constexpr double kDefaultHeadroom = 1.5;

struct MatchQuery {
  double required_power_kw = 0.0;
  double headroom = kDefaultHeadroom;
  FilterCriteria criteria;
};

/// Throws NonPositiveDimension for required_power_kw <= 0 or headroom < 1.
void validate_query(const MatchQuery& query);

/// Devices that can deliver the requirement without exceeding it by more
/// than the headroom factor at their lowest setting, and that match every
/// concrete facet. Ordered by power_max_kw, then producer, then model.
std::vector<Device> match_devices(std::span<const Device> devices, const MatchQuery& query);

/// Sort key used for listings: (producer, model).
bool listing_less(const Device& a, const Device& b) noexcept;

/// Parses a device file (JSON array of records). Validates each record and
/// rejects (producer, model) duplicates. Throws ParseError,
/// InvariantViolation or DuplicateDevice.
std::vector<Device> parse_device_file(std::string_view text,
                                      std::string_view source = "devices.json");

/// Every problem in a device file, one located message each. Empty when
/// parse_device_file would succeed.
std::vector<std::string> check_device_file(std::string_view text,
                                           std::string_view source = "devices.json");

/// Canonical device file text for `devices`, in the given order.
std::string serialize_device_file(std::span<const Device> devices);

struct DevicePage {
  std::size_t page = 1;
  std::size_t page_size = 0;
  std::size_t total = 0;
  std::vector<Device> devices;
};

/// Slice `devices` (already ordered) into 1-based pages. Past-the-end
/// pages are empty.
DevicePage paginate(std::span<const Device> devices, std::size_t page, std::size_t page_size);

/// Device catalog with snapshot reads. Ingestion validates the whole input
/// before publishing it, so readers see either the old or the new device
/// set. With a store path, every ingestion is written there first and the
/// store is reloaded on construction.
class Catalog {
 public:
  using Snapshot = std::shared_ptr<const std::vector<Device>>;

  Catalog();
  explicit Catalog(std::filesystem::path store_path);

  /// Replaces the catalog contents. Returns the new device count.
  std::size_t ingest(std::vector<Device> devices);
  std::size_t ingest_text(std::string_view text, std::string_view source = "devices.json");
  std::size_t ingest_file(const std::filesystem::path& path);

  /// Devices sorted by (producer, model).
  Snapshot snapshot() const;
  std::size_t size() const;

  std::vector<Device> match(const MatchQuery& query) const;
  DevicePage list(std::size_t page, std::size_t page_size) const;

  /// Device file text for the current contents, in listing order.
  std::string export_text() const;

 private:
  std::optional<std::filesystem::path> store_path_;
  mutable std::mutex snapshot_mutex_;
  std::mutex write_mutex_;
  Snapshot devices_;
};

}  // namespace heats
