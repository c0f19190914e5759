#pragma once

#include "corrwit/construct.hpp"
#include "corrwit/decide.hpp"
#include "corrwit/error.hpp"
#include "corrwit/lattice.hpp"
#include "corrwit/oracle.hpp"
#include "corrwit/serialize.hpp"
