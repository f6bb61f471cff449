#include "radialbc/errors.hpp"

namespace radialbc {

void throw_domain(std::string const& msg)
{
    throw DomainError(msg);
}

} // namespace radialbc
