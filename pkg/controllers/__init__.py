# Controllers package 