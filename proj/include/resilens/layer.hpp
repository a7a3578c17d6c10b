#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace resilens {

// The five layers of the model, ordered bottom-up.
enum class Layer : std::uint8_t { Physical = 0, Sensor, Actuator, Cyber, Mission };

inline constexpr std::array<Layer, 5> kAllLayers = {
    Layer::Physical, Layer::Sensor, Layer::Actuator, Layer::Cyber, Layer::Mission};

inline constexpr std::size_t layer_index(Layer l) { return static_cast<std::size_t>(l); }

// Cyber and Mission span every other layer.
inline constexpr bool is_transversal(Layer l) {
  return l == Layer::Cyber || l == Layer::Mission;
}

inline constexpr std::string_view to_string(Layer l) {
  switch (l) {
    case Layer::Physical: return "physical";
    case Layer::Sensor:   return "sensor";
    case Layer::Actuator: return "actuator";
    case Layer::Cyber:    return "cyber";
    case Layer::Mission:  return "mission";
  }
  return "?";
}

inline std::optional<Layer> parse_layer(std::string_view s) {
  for (Layer l : kAllLayers)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

// Small value-type set of layers backed by a bitmask.
class LayerSet {
 public:
  constexpr LayerSet() = default;
  constexpr LayerSet(std::initializer_list<Layer> ls) {
    for (Layer l : ls) insert(l);
  }

  constexpr void insert(Layer l) { bits_ |= bit(l); }
  constexpr void erase(Layer l) { bits_ &= static_cast<std::uint8_t>(~bit(l)); }
  constexpr bool contains(Layer l) const { return (bits_ & bit(l)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const {
    std::size_t n = 0;
    for (Layer l : kAllLayers) n += contains(l) ? 1 : 0;
    return n;
  }
  constexpr std::uint8_t bits() const { return bits_; }

  std::vector<Layer> to_vector() const {
    std::vector<Layer> out;
    for (Layer l : kAllLayers)
      if (contains(l)) out.push_back(l);
    return out;
  }

  // Layers joined in canonical order, e.g. "sensor;cyber".
  std::string join(char sep) const {
    std::string out;
    for (Layer l : to_vector()) {
      if (!out.empty()) out.push_back(sep);
      out.append(to_string(l));
    }
    return out;
  }

  friend constexpr bool operator==(LayerSet, LayerSet) = default;
  friend constexpr auto operator<=>(LayerSet a, LayerSet b) { return a.bits_ <=> b.bits_; }

 private:
  static constexpr std::uint8_t bit(Layer l) {
    return static_cast<std::uint8_t>(1u << layer_index(l));
  }
  std::uint8_t bits_ = 0;
};

}  // namespace resilens
