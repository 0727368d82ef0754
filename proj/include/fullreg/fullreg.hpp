#pragma once

#include "fullreg/errors.hpp"
#include "fullreg/families.hpp"
#include "fullreg/formulas.hpp"
#include "fullreg/graph_enum.hpp"
#include "fullreg/numerics.hpp"
#include "fullreg/oracle.hpp"
#include "fullreg/verify.hpp"
