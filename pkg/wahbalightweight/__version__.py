__title__ = "wahbalightweight"
__description__ = "Lightweight quaternion solver and Hessian convexity analysis for Wahba's problem"
__version__ = "0.1.0"
__author__ = "wahbalightweight developers"
__license__ = "MIT"
