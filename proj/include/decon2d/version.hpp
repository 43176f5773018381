#ifndef DECON2D_VERSION_HPP
#define DECON2D_VERSION_HPP

#define DECON2D_VERSION "0.1.0"

#endif
