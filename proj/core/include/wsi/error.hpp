#ifndef WSI_ERROR_HPP_
#define WSI_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace wsi {

// Raised for malformed input data and violated operation preconditions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wsi

#endif  // WSI_ERROR_HPP_
