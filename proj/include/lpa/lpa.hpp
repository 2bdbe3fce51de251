#pragma once

#include "lpa/digraph.hpp"
#include "lpa/error.hpp"
#include "lpa/io.hpp"
#include "lpa/leavitt.hpp"
#include "lpa/linalg.hpp"
#include "lpa/localization.hpp"
#include "lpa/module_type.hpp"
#include "lpa/quiver.hpp"
#include "lpa/quotient.hpp"
#include "lpa/scalar.hpp"
#include "lpa/schreier.hpp"
