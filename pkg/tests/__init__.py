# ordered-turan tests
