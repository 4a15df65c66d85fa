#ifndef IEPOLY_VERSION_HPP
#define IEPOLY_VERSION_HPP

#define IEPOLY_VERSION "0.1.0"

#endif
