#pragma once

#include <stdexcept>
#include <string>

namespace pqs {

// A scan or enumeration hit its resource limit before an answer could be
// certified. Never used to smuggle out a guessed answer.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Working precision is insufficient for the requested computation. The
// message states the precision that would suffice when that is known.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pqs
