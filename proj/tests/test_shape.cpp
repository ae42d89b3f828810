int placeholder_test_shape;
