#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tc/perm_group.hpp"
#include "tc/small_group.hpp"

namespace tc {

struct PrimeClass {
  Permutation representative;
  unsigned prime = 0;
  Integer size;
};

enum class ClassProvenance { Computed, Ingested };

// Conjugacy classes of elements of prime order. Computed data keeps an
// index from every prime-order element to its class.
class ClassData {
 public:
  std::vector<PrimeClass> classes;
  ClassProvenance provenance = ClassProvenance::Computed;

  // Class id of x (an element of G), or nothing when x is not of prime order.
  std::optional<std::size_t> class_of(const PermGroup& G, const Permutation& x) const;

  // Enumerated prime-order elements, present for computed data.
  struct Index {
    BaseImageIndex keys;
    std::vector<std::uint32_t> class_id;
  };
  std::shared_ptr<const Index> index;
};

// Enumerates G (at most max_elements elements) and sorts its prime-order
// elements into conjugacy classes.
ClassData prime_order_classes(const PermGroup& G, const Integer& max_elements = Integer(10000000));

// JSON list of {order, representative (1-indexed cycles), class_size (string)}.
ClassData parse_class_data(const PermGroup& G, const std::string& json_text);
ClassData load_class_data(const PermGroup& G, const std::string& path);
std::string class_data_to_json(const ClassData& data);

bool is_prime(unsigned long n);

// The element of G sending its base to the given images.
Permutation element_from_base_images(const PermGroup& G, std::span<const Point> images);

}  // namespace tc
