# Services package for the Pythagorean won-loss toolkit
