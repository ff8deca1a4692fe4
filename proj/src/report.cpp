#include "qtfock/errors.hpp"

// implementation arrives with its module
